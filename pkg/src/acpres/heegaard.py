"""Combinatorial Heegaard diagrams as signed crossing lists.

A diagram stores, per component, a genus and the curves assigned to it,
plus a global list of crossings.  Each crossing records its position
along both the beta curve and the alpha curve it meets, with one sign
shared by both readings.  Only intersection data is modelled; surface
embeddings and geometric realizability are out of scope.
"""

from dataclasses import dataclass

from .errors import (
    DifferentComponents,
    IndexOutOfRange,
    InvalidParameter,
    ParseError,
    SameCurve,
    Unbalanced,
)
from .presentation import Presentation


@dataclass(frozen=True)
class Crossing:
    beta: int
    beta_pos: int
    alpha: int
    alpha_pos: int
    sign: int


@dataclass(frozen=True)
class HeegaardDiagram:
    component_genus: tuple[int, ...]
    alpha_component: tuple[int, ...]
    beta_component: tuple[int, ...]
    crossings: tuple[Crossing, ...]

    def __post_init__(self):
        object.__setattr__(self, "component_genus", tuple(self.component_genus))
        object.__setattr__(self, "alpha_component", tuple(self.alpha_component))
        object.__setattr__(self, "beta_component", tuple(self.beta_component))
        object.__setattr__(self, "crossings", tuple(self.crossings))
        ncomp = len(self.component_genus)
        for comp in self.alpha_component + self.beta_component:
            if not 0 <= comp < ncomp:
                raise IndexOutOfRange(f"component {comp} out of range")
        for g in self.component_genus:
            if g < 0:
                raise InvalidParameter("genus must be nonnegative")
        beta_seen = {}
        alpha_seen = {}
        for x in self.crossings:
            if x.sign not in (1, -1):
                raise InvalidParameter(f"crossing sign must be +1 or -1, got {x.sign}")
            if not 0 <= x.beta < self.n_beta:
                raise IndexOutOfRange(f"beta curve {x.beta} out of range")
            if not 0 <= x.alpha < self.n_alpha:
                raise IndexOutOfRange(f"alpha curve {x.alpha} out of range")
            if self.beta_component[x.beta] != self.alpha_component[x.alpha]:
                raise DifferentComponents(
                    f"crossing pairs curves from components "
                    f"{self.beta_component[x.beta]} and {self.alpha_component[x.alpha]}"
                )
            beta_seen.setdefault(x.beta, set()).add(x.beta_pos)
            alpha_seen.setdefault(x.alpha, set()).add(x.alpha_pos)
        for curve, positions in beta_seen.items():
            if positions != set(range(len(positions))):
                raise InvalidParameter(f"beta {curve} positions are not 0..{len(positions) - 1}")
        for curve, positions in alpha_seen.items():
            if positions != set(range(len(positions))):
                raise InvalidParameter(f"alpha {curve} positions are not 0..{len(positions) - 1}")

    @property
    def n_alpha(self) -> int:
        return len(self.alpha_component)

    @property
    def n_beta(self) -> int:
        return len(self.beta_component)

    @property
    def balanced(self) -> bool:
        ncomp = len(self.component_genus)
        alphas = [0] * ncomp
        betas = [0] * ncomp
        for comp in self.alpha_component:
            alphas[comp] += 1
        for comp in self.beta_component:
            betas[comp] += 1
        return alphas == betas


def _beta_sequence(d: HeegaardDiagram, beta: int):
    return sorted((x for x in d.crossings if x.beta == beta), key=lambda x: x.beta_pos)


def _alpha_sequence(d: HeegaardDiagram, alpha: int):
    return sorted((x for x in d.crossings if x.alpha == alpha), key=lambda x: x.alpha_pos)


def presentation_of_alpha(d: HeegaardDiagram) -> Presentation:
    """Generators = alpha curves; relator i reads the signed alpha indices
    met along beta_i from its start point."""
    if not d.balanced:
        raise Unbalanced("diagram components carry unequal alpha/beta counts")
    relators = [
        tuple((x.alpha + 1) * x.sign for x in _beta_sequence(d, i))
        for i in range(d.n_beta)
    ]
    return Presentation(d.n_alpha, relators)


def transpose(d: HeegaardDiagram) -> HeegaardDiagram:
    """Swap the roles of the alpha and beta systems."""
    return HeegaardDiagram(
        d.component_genus,
        d.beta_component,
        d.alpha_component,
        tuple(
            Crossing(x.alpha, x.alpha_pos, x.beta, x.beta_pos, x.sign)
            for x in d.crossings
        ),
    )


def presentation_of_beta(d: HeegaardDiagram) -> Presentation:
    return presentation_of_alpha(transpose(d))


def change_start_point(d: HeegaardDiagram, beta_index: int, offset: int) -> HeegaardDiagram:
    """Move the start point of one beta curve; its relator rotates left
    by ``offset``."""
    if not 0 <= beta_index < d.n_beta:
        raise IndexOutOfRange(f"beta curve {beta_index} out of range")
    r = sum(1 for x in d.crossings if x.beta == beta_index)
    crossings = tuple(
        Crossing(x.beta, (x.beta_pos - offset) % r, x.alpha, x.alpha_pos, x.sign)
        if x.beta == beta_index and r
        else x
        for x in d.crossings
    )
    return HeegaardDiagram(d.component_genus, d.alpha_component, d.beta_component, crossings)


def reverse_orientation(d: HeegaardDiagram, kind: str, index: int) -> HeegaardDiagram:
    """Reverse one curve.  A beta reversal inverts its relator; an alpha
    reversal inverts that generator wherever it appears."""
    if kind not in ("alpha", "beta"):
        raise InvalidParameter(f"kind must be 'alpha' or 'beta', got {kind!r}")
    count = d.n_alpha if kind == "alpha" else d.n_beta
    if not 0 <= index < count:
        raise IndexOutOfRange(f"{kind} curve {index} out of range")
    crossings = []
    if kind == "beta":
        r = sum(1 for x in d.crossings if x.beta == index)
        for x in d.crossings:
            if x.beta == index:
                x = Crossing(x.beta, r - 1 - x.beta_pos, x.alpha, x.alpha_pos, -x.sign)
            crossings.append(x)
    else:
        r = sum(1 for x in d.crossings if x.alpha == index)
        for x in d.crossings:
            if x.alpha == index:
                x = Crossing(x.beta, x.beta_pos, x.alpha, r - 1 - x.alpha_pos, -x.sign)
            crossings.append(x)
    return HeegaardDiagram(d.component_genus, d.alpha_component, d.beta_component, crossings)


def stabilize_diagram(d: HeegaardDiagram, component: int) -> HeegaardDiagram:
    """Add a once-crossing alpha/beta pair to the component; genus + 1."""
    if not 0 <= component < len(d.component_genus):
        raise IndexOutOfRange(f"component {component} out of range")
    genus = list(d.component_genus)
    genus[component] += 1
    return HeegaardDiagram(
        genus,
        d.alpha_component + (component,),
        d.beta_component + (component,),
        d.crossings + (Crossing(d.n_beta, 0, d.n_alpha, 0, 1),),
    )


def beta_handle_slide(d: HeegaardDiagram, i: int, j: int, reversed_slide: bool = False) -> HeegaardDiagram:
    """Slide beta_i over beta_j: beta_i's crossing sequence continues with
    beta_j's (sign-flipped and reversed when ``reversed_slide``), the new
    crossings taking fresh slots at the end of each alpha's order."""
    for idx in (i, j):
        if not 0 <= idx < d.n_beta:
            raise IndexOutOfRange(f"beta curve {idx} out of range")
    if i == j:
        raise SameCurve("handle slide needs two distinct beta curves")
    if d.beta_component[i] != d.beta_component[j]:
        raise DifferentComponents("handle slide needs curves on one component")
    base = sum(1 for x in d.crossings if x.beta == i)
    alpha_next = {a: 0 for a in range(d.n_alpha)}
    for x in d.crossings:
        alpha_next[x.alpha] = max(alpha_next[x.alpha], x.alpha_pos + 1)
    seq = _beta_sequence(d, j)
    flip = 1
    if reversed_slide:
        seq = seq[::-1]
        flip = -1
    new = []
    for t, x in enumerate(seq):
        new.append(Crossing(i, base + t, x.alpha, alpha_next[x.alpha], x.sign * flip))
        alpha_next[x.alpha] += 1
    return HeegaardDiagram(
        d.component_genus, d.alpha_component, d.beta_component, d.crossings + tuple(new)
    )


def add_trivial_component(d: HeegaardDiagram, genus: int = 0, empty: bool = True) -> HeegaardDiagram:
    """Append a curve-free component; extracted presentations are unchanged.
    ``empty`` marks the sphere-union case and forces genus 0."""
    if empty and genus != 0:
        raise InvalidParameter("an empty (sphere) component has genus 0")
    return HeegaardDiagram(
        d.component_genus + (genus,), d.alpha_component, d.beta_component, d.crossings
    )


def add_cylinder_handle(d: HeegaardDiagram, component: int) -> HeegaardDiagram:
    """Add a handle away from the curves: genus + 1, nothing else changes."""
    if not 0 <= component < len(d.component_genus):
        raise IndexOutOfRange(f"component {component} out of range")
    genus = list(d.component_genus)
    genus[component] += 1
    return HeegaardDiagram(genus, d.alpha_component, d.beta_component, d.crossings)


# --- text format -------------------------------------------------------------
#
# component <id> genus <g> alphas <k> betas <k>
# beta <i>: +1@0 -2@1 +1@2          (sign alpha_idx @ alpha_pos, beta_pos order)

import re

_ENTRY_RE = re.compile(r"([+-])(\d+)@(\d+)\Z")


def format_diagram(d: HeegaardDiagram) -> str:
    lines = []
    ncomp = len(d.component_genus)
    alphas = [sum(1 for c in d.alpha_component if c == comp) for comp in range(ncomp)]
    betas = [sum(1 for c in d.beta_component if c == comp) for comp in range(ncomp)]
    for comp in range(ncomp):
        lines.append(
            f"component {comp + 1} genus {d.component_genus[comp]} "
            f"alphas {alphas[comp]} betas {betas[comp]}"
        )
    for i in range(d.n_beta):
        entries = " ".join(
            f"{'+' if x.sign > 0 else '-'}{x.alpha + 1}@{x.alpha_pos}"
            for x in _beta_sequence(d, i)
        )
        lines.append(f"beta {i + 1}: {entries}".rstrip())
    return "\n".join(lines) + "\n"


def parse_diagram(text: str) -> HeegaardDiagram:
    """Parse the text format; curves take global indices in header order."""
    genus = []
    alpha_component = []
    beta_component = []
    beta_lines = {}
    offset = 0
    for line in text.splitlines(keepends=True):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            offset += len(line)
            continue
        tokens = stripped.split()
        if tokens[0] == "component":
            if len(tokens) != 8 or tokens[2] != "genus" or tokens[4] != "alphas" or tokens[6] != "betas":
                raise ParseError("component header must be 'component <id> genus <g> alphas <k> betas <k>'", offset)
            try:
                cid, g, ka, kb = int(tokens[1]), int(tokens[3]), int(tokens[5]), int(tokens[7])
            except ValueError:
                raise ParseError("non-integer field in component header", offset) from None
            if cid != len(genus) + 1:
                raise ParseError(f"component ids must be sequential, expected {len(genus) + 1}", offset)
            genus.append(g)
            alpha_component.extend([cid - 1] * ka)
            beta_component.extend([cid - 1] * kb)
        elif tokens[0] == "beta":
            if len(tokens) < 2 or not tokens[1].endswith(":"):
                raise ParseError("beta line must be 'beta <i>: <entries>'", offset)
            try:
                bid = int(tokens[1][:-1])
            except ValueError:
                raise ParseError(f"bad beta index {tokens[1][:-1]!r}", offset) from None
            if bid - 1 in beta_lines:
                raise ParseError(f"duplicate beta line {bid}", offset)
            entries = []
            for tok in tokens[2:]:
                m = _ENTRY_RE.match(tok)
                if not m:
                    raise ParseError(f"bad crossing entry {tok!r}", offset)
                sign = 1 if m.group(1) == "+" else -1
                entries.append((int(m.group(2)) - 1, int(m.group(3)), sign))
            beta_lines[bid - 1] = entries
        else:
            raise ParseError(f"unexpected line {stripped!r}", offset)
        offset += len(line)
    crossings = []
    for bid, entries in beta_lines.items():
        if not 0 <= bid < len(beta_component):
            raise ParseError(f"beta index {bid + 1} outside declared curves", 0)
        for pos, (alpha, alpha_pos, sign) in enumerate(entries):
            crossings.append(Crossing(bid, pos, alpha, alpha_pos, sign))
    return HeegaardDiagram(genus, alpha_component, beta_component, crossings)
