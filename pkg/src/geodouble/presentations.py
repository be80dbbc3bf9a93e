"""Finite presentations, Smith normal form, and rank-inequality audits.

``presentation_from_complex`` reads a group presentation off a glued
complex: collapse a spanning tree of the vertex classes, take the
remaining edge classes as generators, and one relator per face pairing
(the boundary walk of the glued triangle written in edge-class letters).

``smith_normal_form`` diagonalises integer matrices by row and column
operations over arbitrary-precision integers; the count of nonzero
invariant factors is the rational rank, which drives the abelianization
rank used everywhere else.

``rank_audit`` replays, case by case, an arithmetic chain bounding twice
the rank of the fundamental group of an ambient manifold from below and
comparing it against the rank of a surface subgroup pointwise fixed by a
reversing involution.  Topological inputs (rank does not drop under
doubling, half of the boundary homology survives inside, the
incompressible-boundary rank gap) enter as named assumed steps; all
arithmetic between them is exact and the final inequality must be strict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .freegroups import Word, free_reduce, inverse_word, word_to_str
from .triangulation import (
    EDGE_ENDS,
    FACES,
    FACE_WALK_SIGNS,
    GluedComplex,
    GluingError,
)


def cyclic_reduce(word: Iterable[int]) -> Word:
    """Freely reduce, then strip cancelling first/last letters."""
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


@dataclass(frozen=True)
class Presentation:
    """Generators 1..generator_count with freely and cyclically reduced relators."""

    generator_count: int
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if self.generator_count < 0:
            raise ValueError("generator count must be >= 0")
        cleaned = []
        for r in self.relators:
            w = cyclic_reduce(r)
            for s in w:
                if not 1 <= abs(s) <= self.generator_count:
                    raise ValueError(f"relator letter {s} outside generators")
            if w:
                cleaned.append(w)
        object.__setattr__(self, "relators", tuple(cleaned))

    def __str__(self) -> str:
        gens = ", ".join(chr(ord("a") + i) for i in range(self.generator_count))
        rels = ", ".join(word_to_str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def presentation_from_complex(complex: GluedComplex) -> Presentation:
    """Present the fundamental group of the glued 2-complex.

    Requires a connected complex whose edge classes are orientation
    consistent (no edge identified with its own reverse, which would leave
    the boundary words ill-defined).
    """
    if not complex.connected:
        raise GluingError("complex is disconnected")
    for i, ec in enumerate(complex.edge_classes):
        if not ec.orientation_consistent:
            raise GluingError(
                f"edge class {i} is glued to itself reversed; no boundary words")

    # 1-skeleton on the vertex classes; spanning tree by breadth-first search.
    vclass = complex.vertex_lookup
    eclass = complex.edge_lookup
    n_vertices = complex.vertex_class_count
    incident: list[list[tuple[int, int]]] = [[] for _ in range(n_vertices)]
    endpoints = []
    for idx, ec in enumerate(complex.edge_classes):
        tet, edge, _ = ec.members[0]
        i_end, t_end = EDGE_ENDS[edge]
        vi, vt = vclass[(tet, i_end)], vclass[(tet, t_end)]
        endpoints.append((vi, vt))
        incident[vi].append((idx, vt))
        incident[vt].append((idx, vi))

    in_tree = [False] * len(complex.edge_classes)
    seen = [False] * n_vertices
    seen[0] = True
    queue = [0]
    for v in queue:
        for idx, w in incident[v]:
            if not seen[w]:
                seen[w] = True
                in_tree[idx] = True
                queue.append(w)
    if not all(seen):
        raise GluingError("vertex classes are disconnected")

    gen_index: dict[int, int] = {}
    for idx in range(len(complex.edge_classes)):
        if not in_tree[idx]:
            gen_index[idx] = len(gen_index) + 1

    relators = []
    for p in complex.scheme.pairings:
        word = []
        edges = FACES[p.a.face]
        walks = FACE_WALK_SIGNS[p.a.face]
        for j in range(3):
            idx, sign = eclass[(p.a.tet, edges[j])]
            if in_tree[idx]:
                continue
            word.append(gen_index[idx] * walks[j] * sign)
        relators.append(tuple(word))
    return Presentation(len(gen_index), tuple(relators))


# -- Tietze simplification -----------------------------------------------------


def _cyclic_canonical(word: Word) -> Word:
    """Least rotation among the word and its inverse, for deduplication."""
    candidates = []
    for w in (word, inverse_word(word)):
        for i in range(len(w) or 1):
            candidates.append(w[i:] + w[:i])
    return min(candidates) if candidates else ()


def _substitute(word: Word, gen: int, image: Word) -> Word:
    out: list[int] = []
    for s in word:
        if s == gen:
            out.extend(image)
        elif s == -gen:
            out.extend(inverse_word(image))
        else:
            out.append(s)
    return free_reduce(out)


def _drop_generator(word: Word, gen: int) -> Word:
    return tuple(s - (1 if s > gen else 0) if s > 0 else s + (1 if -s > gen else 0)
                 for s in word)


def tietze_simplify(p: Presentation, max_relator_length: int = 16) -> Presentation:
    """Simplify by free/cyclic reduction, deduplication, and elimination of
    generators that some short relator uses exactly once.

    Substitution is only attempted on relators of length at most
    ``max_relator_length`` (length-1 relators always qualify), which keeps
    the rewriting from blowing up.  The generator count never increases and
    the presented group is unchanged.
    """
    gens = p.generator_count
    relators = list(p.relators)
    changed = True
    while changed:
        changed = False
        # Normalise and deduplicate.
        seen: set[Word] = set()
        cleaned: list[Word] = []
        for r in relators:
            w = cyclic_reduce(r)
            if not w:
                continue
            key = _cyclic_canonical(w)
            if key in seen:
                continue
            seen.add(key)
            cleaned.append(w)
        relators = cleaned

        # Find a relator using some generator exactly once.
        best: tuple[int, int, Word] | None = None
        for ri, r in enumerate(sorted(relators, key=len)):
            if len(r) > max_relator_length and len(r) > 1:
                continue
            counts: dict[int, int] = {}
            for s in r:
                counts[abs(s)] = counts.get(abs(s), 0) + 1
            for g, cnt in counts.items():
                if cnt == 1:
                    best = (g, relators.index(r), r)
                    break
            if best:
                break
        if best is None:
            break
        g, ri, r = best
        pos = next(i for i, s in enumerate(r) if abs(s) == g)
        rotated = r[pos:] + r[:pos]  # starts with +-g
        image = inverse_word(rotated[1:]) if rotated[0] > 0 else rotated[1:]
        relators = [_drop_generator(_substitute(w, g, image), g)
                    for i, w in enumerate(relators) if i != ri]
        gens -= 1
        changed = True
    return Presentation(gens, tuple(relators))


# -- Smith normal form ---------------------------------------------------------


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of an integer matrix.

    Integer row and column operations only; exact over arbitrary-precision
    integers.  The number of factors is the rank over the rationals.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise ValueError("ragged matrix")
    factors: list[int] = []
    t = 0
    while t < min(m, n):
        # Pivot: a nonzero entry of least magnitude in the trailing block.
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]

        while True:
            progress = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        progress = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        progress = True
            if not progress:
                break

        # Divisibility: fold any non-multiple into the pivot's column and redo.
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, n):
                a[t][j] += a[offender][j]
            continue

        factors.append(abs(a[t][t]))
        t += 1
    return tuple(factors)


def rational_rank(matrix: Sequence[Sequence[int]]) -> int:
    return len(smith_normal_form(matrix))


# -- abelianization -------------------------------------------------------------


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...]


def relator_matrix(p: Presentation) -> list[list[int]]:
    rows = []
    for r in p.relators:
        row = [0] * p.generator_count
        for s in r:
            row[abs(s) - 1] += 1 if s > 0 else -1
        rows.append(row)
    return rows


def abelianization(p: Presentation) -> AbelianInvariants:
    """Rank and torsion of the abelianized group, via Smith normal form."""
    if not p.relators or p.generator_count == 0:
        return AbelianInvariants(p.generator_count, ())
    factors = smith_normal_form(relator_matrix(p))
    nonzero = [f for f in factors if f]
    return AbelianInvariants(p.generator_count - len(nonzero),
                             tuple(f for f in nonzero if f > 1))


def abelianization_rank(p: Presentation) -> int:
    return abelianization(p).rank


# -- covering and surface rank arithmetic ---------------------------------------


def covering_rank_bound(rank_h: int, n: int) -> Fraction:
    """Lower bound (rank_h + n - 1)/n for the rank of a group containing a
    rank-``rank_h`` subgroup of index n."""
    if n < 1:
        raise ValueError("index must be >= 1")
    if rank_h < 0:
        raise ValueError("subgroup rank must be >= 0")
    return Fraction(rank_h + n - 1, n)


def surface_rank(genus: int, boundary_circles: int, orientable: bool) -> int:
    """Rank of a surface group: orientable 2g+k-1 (2g closed), else g+k-1
    (g closed), with genus meaning crosscap count in the non-orientable case."""
    if boundary_circles < 0:
        raise ValueError("boundary circle count must be >= 0")
    if orientable:
        if genus < 0:
            raise ValueError("orientable genus must be >= 0")
        return 2 * genus + boundary_circles - 1 if boundary_circles else 2 * genus
    if genus < 1:
        raise ValueError("non-orientable genus must be >= 1")
    return genus + boundary_circles - 1 if boundary_circles else genus


# -- the rank audit --------------------------------------------------------------


class AuditError(ValueError):
    """Inconsistent audit-case parameters."""


@dataclass(frozen=True)
class AuditCase:
    """Parameters of one surface-versus-manifold rank comparison.

    The fixed surface S has ``genus`` and k = 2*torus_pairs + single_circles
    boundary circles: torus_pairs counts boundary tori of the manifold
    containing two of them, single_circles those containing one.  A
    separating surface forces single_circles = 0; a non-orientable surface
    is never separating; ``same_component`` records whether the two copies
    of S land in one boundary component after cutting (orientable
    non-separating case only, and impossible without boundary circles).
    """

    genus: int
    torus_pairs: int
    single_circles: int
    orientable: bool
    separating: bool
    same_component: bool = False

    @property
    def boundary_circles(self) -> int:
        return 2 * self.torus_pairs + self.single_circles

    def validate(self) -> None:
        g, m, l = self.genus, self.torus_pairs, self.single_circles
        if m < 0 or l < 0:
            raise AuditError("circle counts must be >= 0")
        if self.orientable:
            if g < 0:
                raise AuditError("orientable genus must be >= 0")
        else:
            if g < 1:
                raise AuditError("non-orientable genus must be >= 1")
            if self.separating:
                raise AuditError("a pointwise-fixed non-orientable surface never separates")
            if self.same_component:
                raise AuditError("same_component applies to the orientable non-separating case")
        if self.separating:
            if l != 0:
                raise AuditError("separating surface forces single_circles = 0")
            if self.same_component:
                raise AuditError("separating surface has no same_component case")
        if self.orientable and not self.separating:
            if self.same_component and self.boundary_circles == 0:
                raise AuditError("one boundary component needs connecting annuli (k > 0)")
            if not self.same_component and l != 0:
                raise AuditError(
                    "a singly-placed circle's annulus joins the two copies, "
                    "forcing same_component")


@dataclass(frozen=True)
class AuditStep:
    label: str
    value: Fraction
    assumed: bool = False
    strict: bool = False

    def __str__(self) -> str:
        tags = []
        if self.assumed:
            tags.append("assumed")
        if self.strict:
            tags.append("strict")
        suffix = f"  [{', '.join(tags)}]" if tags else ""
        return f"{self.label} = {self.value}{suffix}"


@dataclass(frozen=True)
class AuditReport:
    case: AuditCase
    steps: tuple[AuditStep, ...]
    double_rank_lower_bound: Fraction
    surface_group_rank: int
    margin: Fraction

    @property
    def strict(self) -> bool:
        return self.margin > 0

    def lines(self) -> list[str]:
        out = [str(s) for s in self.steps]
        rel = ">" if self.strict else "<="
        out.append(
            f"final: 2*rank lower bound {self.double_rank_lower_bound} "
            f"{rel} surface rank {self.surface_group_rank} "
            f"(margin {self.margin})")
        return out


def rank_audit(case: AuditCase) -> AuditReport:
    """Replay the rank-comparison chain for the matching case and check that
    the final inequality 2*rank(ambient) > rank(surface) is strict."""
    case.validate()
    g, m, l, k = case.genus, case.torus_pairs, case.single_circles, case.boundary_circles
    target = surface_rank(g, k, case.orientable)
    steps: list[AuditStep] = []

    def step(label: str, value, assumed: bool = False, strict: bool = False) -> Fraction:
        value = Fraction(value)
        steps.append(AuditStep(label, value, assumed, strict))
        return value

    if case.orientable and case.separating:
        if k > 0:
            capped = step("cut piece boundary genus (annuli cap the circle pairs)",
                          g + Fraction(k, 2))
            h1 = step("first homology rank of the cut piece (half of boundary "
                      "homology survives)", capped, assumed=True)
            bound = step("twice ambient rank, via rank(double) >= rank(piece)",
                         2 * h1, assumed=True)
        else:
            step("incompressible boundary rank gap witness g + 1/2",
                 g + Fraction(1, 2), assumed=True, strict=True)
            piece = step("cut piece rank, rounded up to the next integer", g + 1)
            bound = step("twice ambient rank, via rank(double) >= rank(piece)",
                         2 * piece, assumed=True)
    elif case.orientable and case.same_component:
        sprime = step("glued boundary component genus 2g + 2m + l - 1",
                      2 * g + 2 * m + l - 1)
        h1 = step("first homology rank of the cut manifold (half survives)",
                  sprime, assumed=True)
        pi1 = step("cut manifold rank >= its first homology rank", h1)
        doubled = step("doubled manifold rank (doubling keeps rank)", pi1, assumed=True)
        bound = step("twice ambient rank >= doubled rank + 1 (index-2 cover)",
                     doubled + 1)
    elif case.orientable:
        total = step("sum of the two boundary component genera 2(g + m)",
                     2 * g + 2 * m)
        h1 = step("first homology rank of the cut manifold (half survives)",
                  total, assumed=True)
        pi1 = step("cut manifold rank >= its first homology rank", h1)
        doubled = step("doubled manifold rank (doubling keeps rank)", pi1, assumed=True)
        bound = step("twice ambient rank >= doubled rank + 1 (index-2 cover)",
                     doubled + 1)
    else:
        sprime = step("glued boundary genus (orienting double cover plus annuli) "
                      "g - 1 + 2m + l", g - 1 + 2 * m + l)
        if k > 0:
            h1 = step("first homology rank of the cut manifold (half survives)",
                      sprime, assumed=True)
            pi1 = step("cut manifold rank >= its first homology rank", h1)
        else:
            step("incompressible boundary rank gap witness (g-1) + 1/2",
                 sprime + Fraction(1, 2), assumed=True, strict=True)
            pi1 = step("cut manifold rank, rounded up to the next integer",
                       sprime + 1)
        doubled = step("doubled manifold rank (doubling keeps rank)", pi1, assumed=True)
        bound = step("twice ambient rank >= doubled rank + 1 (index-2 cover)",
                     doubled + 1)

    margin = bound - target
    return AuditReport(case, tuple(steps), bound, target, margin)


def enumerate_audit_cases(genus_max: int, torus_pairs_max: int,
                          single_circles_max: int) -> Iterator[AuditCase]:
    """All consistent parameter tuples within the given bounds."""
    for g, m, l in itertools.product(range(genus_max + 1),
                                     range(torus_pairs_max + 1),
                                     range(single_circles_max + 1)):
        for orientable, separating, same in itertools.product(
                (True, False), (True, False), (True, False)):
            case = AuditCase(g, m, l, orientable, separating, same)
            try:
                case.validate()
            except AuditError:
                continue
            yield case
