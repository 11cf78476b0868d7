from dataclasses import asdict, dataclass


@dataclass
class Counters:
    """Exact event counts gathered while a search runs."""

    baby_steps: int = 0
    giant_steps: int = 0
    lll_calls: int = 0
    collisions_checked: int = 0
    gcd_calls: int = 0

    def as_dict(self):
        return asdict(self)

    def merge(self, other):
        for key, value in asdict(other).items():
            setattr(self, key, getattr(self, key) + value)


def ensure(counters):
    return counters if counters is not None else Counters()
