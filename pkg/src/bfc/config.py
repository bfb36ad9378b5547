"""Per-measure arity limits, overridable through ``BFC_*`` environment variables."""

import os
from dataclasses import dataclass, fields, replace

_ENV = {
    "dense": "BFC_DENSE_LIMIT",
    "bs": "BFC_BS_LIMIT",
    "cert": "BFC_C_LIMIT",
    "dtree": "BFC_D_LIMIT",
    "dpar": "BFC_DPAR_LIMIT",
    "rank": "BFC_RANK_LIMIT",
    "extension": "BFC_EXT_LIMIT",
}


@dataclass(frozen=True)
class Limits:
    dense: int = 20
    bs: int = 12
    cert: int = 12
    dtree: int = 13
    dpar: int = 6
    rank: int = 10
    extension: int = 16

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        kwargs = {}
        for name, var in _ENV.items():
            if var in environ:
                kwargs[name] = int(environ[var])
        return cls(**kwargs)

    def with_overrides(self, **overrides):
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ValueError(f"unknown limit(s): {', '.join(sorted(unknown))}")
        return replace(self, **{k: int(v) for k, v in overrides.items()})

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def default_limits():
    return Limits.from_env()
