import os
from dataclasses import asdict, dataclass, replace
from typing import Tuple

from utils.errors import ValidationError

DEFAULT_CLONE_BUDGET = 100_000
DEFAULT_MAX_ARITY = 2
DEFAULT_SUPERNILPOTENCE_CAP = 4
DEFAULT_WINDOW = (-15, 14)
DEFAULT_DEPTH = 3
DEFAULT_CLOSURE_BUDGET = 250_000
DEFAULT_CAD_CAP = 10_000
DEFAULT_HOM_THRESHOLD = 8
DEFAULT_SCAN_BUDGET = 5_000_000

CLONE_BUDGET_ENV = 'NILDUAL_CLONE_BUDGET'


@dataclass(frozen=True)
class Caps:
    """
    Every limit a computation runs under. Reports echo these values.
    """
    clone_budget: int = DEFAULT_CLONE_BUDGET
    max_arity: int = DEFAULT_MAX_ARITY
    supernilpotence_cap: int = DEFAULT_SUPERNILPOTENCE_CAP
    window: Tuple[int, int] = DEFAULT_WINDOW
    depth: int = DEFAULT_DEPTH
    closure_budget: int = DEFAULT_CLOSURE_BUDGET
    cad_cap: int = DEFAULT_CAD_CAP
    hom_threshold: int = DEFAULT_HOM_THRESHOLD
    scan_budget: int = DEFAULT_SCAN_BUDGET

    @classmethod
    def from_env(cls) -> 'Caps':
        """Defaults, with the clone budget taken from the environment when set."""
        budget = os.environ.get(CLONE_BUDGET_ENV)
        if budget is None:
            return cls()
        try:
            return cls(clone_budget=int(budget))
        except ValueError:
            raise ValidationError(f'{CLONE_BUDGET_ENV} must be an integer, got {budget!r}')

    def override(self, **values) -> 'Caps':
        """A copy with every given value that is not None replaced."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})

    def validate(self) -> None:
        for name, value in asdict(self).items():
            if name == 'window':
                continue
            if value < 0 or (value == 0 and name != 'depth'):
                raise ValidationError(f'cap {name} must be positive, got {value}')
        lo, hi = self.window
        if lo > hi:
            raise ValidationError(f'window [{lo}, {hi}] is empty')

    def as_dict(self) -> dict:
        caps = asdict(self)
        caps['window'] = list(self.window)
        return caps
