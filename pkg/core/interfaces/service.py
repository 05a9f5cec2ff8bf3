"""Service layer interfaces"""
from abc import abstractmethod
from pathlib import Path
from typing import List, Optional, Tuple

from .base import BaseInterface
from models.functionals import MinimizerProfile
from models.run import InfimumReport, QReport, RunConfig, VerifyReport
from models.shooting import InfimumResult, SweepRow

class RunnerInterface(BaseInterface[RunConfig]):
    """Interface for the experiment runner behind the command line"""
    @abstractmethod
    def run_find_infimum(self) -> Tuple[InfimumResult, InfimumReport]:
        """Solve for the sharp constant and check the result"""
        pass

    @abstractmethod
    def run_sweep(self) -> List[SweepRow]:
        """Evaluate both schemes on the configured lambda grid"""
        pass

    @abstractmethod
    def run_profile(self) -> Tuple[InfimumResult, MinimizerProfile]:
        """Sample one period of the minimizer"""
        pass

    @abstractmethod
    def run_verify(self, inject_i: Optional[float] = None) -> VerifyReport:
        """Run the oracle suite"""
        pass

    @abstractmethod
    def run_q(self, path: Path, periodic: bool) -> QReport:
        """Quotient of a sample file"""
        pass
