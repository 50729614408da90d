"""Generators for named presentation families used in tests and experiments."""

from .errors import InvalidParameter
from .presentation import Presentation


def trivial(n: int) -> Presentation:
    """Rank-n trivial presentation (a1,...,an | a1,...,an)."""
    if n < 1:
        raise InvalidParameter(f"trivial(n) needs n >= 1, got {n}")
    return Presentation(n, tuple((k + 1,) for k in range(n)))


def paper_z() -> Presentation:
    """The three-generator presentation (a,b,c | ab, bc, ac^-1) of the
    integers; its relators keep even exponent sums under stable moves,
    which blocks any reduction below three generators without
    replacement moves."""
    return Presentation(3, ((1, 2), (2, 3), (1, -3)))


def ak(n: int) -> Presentation:
    """Akbulut-Kirby family AK(n) = (x,y | x^n y^-(n+1), xyx y^-1 x^-1 y^-1)."""
    if n < 2:
        raise InvalidParameter(f"ak(n) needs n >= 2, got {n}")
    r1 = (1,) * n + (-2,) * (n + 1)
    r2 = (1, 2, 1, -2, -1, -2)
    return Presentation(2, (r1, r2))


def from_spec(spec: str) -> Presentation:
    """Build from a CLI family spec like ``trivial:3``, ``paperZ``, ``ak:2``."""
    name, _, arg = spec.partition(":")
    if name == "paperZ":
        if arg:
            raise InvalidParameter("paperZ takes no parameter")
        return paper_z()
    if name in ("trivial", "ak"):
        try:
            k = int(arg)
        except ValueError:
            raise InvalidParameter(f"family {name} needs an integer parameter, got {arg!r}") from None
        return trivial(k) if name == "trivial" else ak(k)
    raise InvalidParameter(f"unknown family {name!r}")
