"""
Run Factory - maps a model selector to the strategy that runs it.
Extra model families can be plugged in with register_strategy().
"""

from __future__ import annotations

from core.errors import ConfigurationError
from core.runs import BoussinesqRunStrategy, RunStrategy, ScalarRunStrategy

CORE_MODELS = ("fkdv", "custom", "boussinesq")


class RunFactory:
    """Context class that selects the run strategy for a configuration."""

    def __init__(self):
        scalar = ScalarRunStrategy()
        self._strategies: dict[str, RunStrategy] = {
            "fkdv": scalar,
            "custom": scalar,
            "boussinesq": BoussinesqRunStrategy(),
        }

    def register_strategy(self, model: str, strategy: RunStrategy) -> None:
        if not isinstance(strategy, RunStrategy):
            raise TypeError(f"Strategy must be a RunStrategy subclass, got {type(strategy)}")
        self._strategies[model] = strategy

    def unregister_strategy(self, model: str) -> bool:
        """Remove a registered strategy. Returns True if removed."""
        if model in CORE_MODELS:
            raise ValueError(f"Cannot unregister core strategy: {model}")
        return self._strategies.pop(model, None) is not None

    @property
    def available_models(self) -> list[str]:
        return list(self._strategies.keys())

    def strategy_for(self, model: str) -> RunStrategy:
        if model not in self._strategies:
            raise ConfigurationError(f"Unknown model: {model}")
        return self._strategies[model]
