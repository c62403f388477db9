"""
Filter paths: concrete parameter sequences ``(lam_k, mu_k)`` tending to the
origin along which regularized resolvents are evaluated.
"""
from dataclasses import dataclass

from core.exceptions import ConfigurationError

PATH_FINAL_MAX = 1e-6
DEFAULT_DEPTH = 20


@dataclass(frozen=True)
class FilterPath:
    """
    Pairs in ``{lam, mu >= 0, lam + mu != 0}`` whose larger coordinate
    strictly decreases to at most ``1e-6``.
    """
    pairs: tuple
    label: str = 'custom'

    def __post_init__(self):
        pairs = tuple((float(lam), float(mu)) for lam, mu in self.pairs)
        object.__setattr__(self, 'pairs', pairs)
        if not pairs:
            raise ConfigurationError('a filter path needs at least one pair')
        for lam, mu in pairs:
            if lam < 0 or mu < 0 or lam + mu == 0:
                raise ConfigurationError(f'pair ({lam}, {mu}) is outside lam, mu >= 0, lam + mu != 0')
        scales = [max(pair) for pair in pairs]
        if any(b >= a for a, b in zip(scales, scales[1:])):
            raise ConfigurationError(f'path {self.label!r} must strictly decrease in max(lam, mu)')
        if scales[-1] > PATH_FINAL_MAX:
            raise ConfigurationError(
                f'path {self.label!r} ends at {scales[-1]:.3e}, above {PATH_FINAL_MAX:.0e}'
            )

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def scale(self, index):
        return max(self.pairs[index])

    @classmethod
    def diagonal(cls, depth=DEFAULT_DEPTH):
        """``lam_k = mu_k = 2^-k`` for ``k = 0..depth``"""
        return cls(tuple((2.0 ** -k, 2.0 ** -k) for k in range(depth + 1)), label='diagonal')

    @classmethod
    def alternate(cls, depth=DEFAULT_DEPTH):
        """``lam_k = 2^-k``, ``mu_k = 4^-k``"""
        return cls(tuple((2.0 ** -k, 4.0 ** -k) for k in range(depth + 1)), label='alternate')

    @classmethod
    def first_only(cls, depth=DEFAULT_DEPTH):
        """``lam_k = 2^-k`` with ``mu = 0``: the single-parameter regularization of the first operator"""
        return cls(tuple((2.0 ** -k, 0.0) for k in range(depth + 1)), label='first_only')

    @classmethod
    def second_only(cls, depth=DEFAULT_DEPTH):
        """``mu_k = 2^-k`` with ``lam = 0``"""
        return cls(tuple((0.0, 2.0 ** -k) for k in range(depth + 1)), label='second_only')

    @classmethod
    def named(cls, label, depth=DEFAULT_DEPTH):
        builders = {
            'diagonal': cls.diagonal,
            'alternate': cls.alternate,
            'first_only': cls.first_only,
            'second_only': cls.second_only,
        }
        try:
            return builders[label](depth)
        except KeyError:
            raise ConfigurationError(f'unknown path {label!r}; choose from {sorted(builders)}') from None

    def to_dict(self):
        return {'label': self.label, 'pairs': [list(pair) for pair in self.pairs]}
