"""Base interface shared by configurable components"""
from abc import ABC, abstractmethod
from typing import Generic, TypeVar

C = TypeVar('C')

class BaseInterface(ABC, Generic[C]):
    """A component that is configured once and validated before use"""
    @abstractmethod
    def initialize(self, config: C) -> None:
        """Bind the component to a configuration"""
        pass

    @abstractmethod
    def validate_config(self) -> bool:
        """Check the bound configuration; raise ConfigurationError when invalid"""
        pass
