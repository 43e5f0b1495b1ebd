"""Exact rational polyhedral cones and fans.

Cones carry a double description: primitive integer extreme rays together
with a minimal set of facet half-spaces (plus span equations when the cone
is not full-dimensional).  Both sides are recomputed canonically on
construction, so structurally equal cones compare equal regardless of how
they were produced.

The conversion between the two descriptions is the incremental double
description method: inequalities are added one at a time, new extreme rays
arise from adjacent positive/negative pairs, and adjacency is decided by
the combinatorial tight-set test (tracked as bitmasks over the processed
constraints).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, InvalidCone, SupportMismatch
from .linalg import (
    dot,
    is_zero,
    primitive,
    rank,
    reduce_mod_rowspace,
    row_reduce,
    sign_canonical,
    vadd,
    vneg,
)


@dataclass(frozen=True, order=True)
class HalfSpace:
    """Closed linear half-space ``{x : normal . x >= 0}`` through the origin.

    The inward normal is stored as a primitive integer vector; its sign is
    meaningful.  ``hyperplane_key`` sign-normalizes for hyperplane identity.
    """

    normal: tuple

    def evaluate(self, x):
        return dot(self.normal, x)

    def hyperplane_key(self):
        return sign_canonical(self.normal)

    def flipped(self):
        return HalfSpace(vneg(self.normal))


def _tight_mask(vec, processed):
    mask = 0
    for j, c in enumerate(processed):
        if dot(c, vec) == 0:
            mask |= 1 << j
    return mask


def _dd(ineqs, n):
    """V-representation of ``{x : a . x >= 0 for a in ineqs}``.

    Returns ``(lines, rays)``: a basis of the lineality space and the
    extreme rays modulo lineality, all primitive integer vectors.
    """
    lines = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays = []
    processed = []
    for a in ineqs:
        a = primitive(a)
        if is_zero(a):
            continue
        pivot = next((l for l in lines if dot(a, l) != 0), None)
        if pivot is not None:
            lines.remove(pivot)
            if dot(a, pivot) < 0:
                pivot = vneg(pivot)
            ap = dot(a, pivot)
            lines = [
                primitive(tuple(ap * li - dot(a, l) * pi for li, pi in zip(l, pivot)))
                for l in lines
            ]
            rays = [
                primitive(tuple(ap * ri - dot(a, r) * pi for ri, pi in zip(r, pivot)))
                for r in rays
            ]
            rays.append(pivot)
            processed.append(a)
            continue
        masks = [_tight_mask(r, processed) for r in rays]
        pos, zero, neg = [], [], []
        for r, m in zip(rays, masks):
            val = dot(a, r)
            if val > 0:
                pos.append((r, m))
            elif val < 0:
                neg.append((r, m))
            else:
                zero.append(r)
        if neg:
            new = set()
            nrays = len(rays)
            for rp, mp in pos:
                ap_ = dot(a, rp)
                for rn, mn in neg:
                    common = mp & mn
                    if nrays > 2:
                        adjacent = True
                        for rs, ms in zip(rays, masks):
                            if rs is rp or rs is rn:
                                continue
                            if common & ~ms == 0:
                                adjacent = False
                                break
                        if not adjacent:
                            continue
                    new.add(
                        primitive(
                            tuple(ap_ * xn - dot(a, rn) * xp for xn, xp in zip(rn, rp))
                        )
                    )
            rays = [r for r, _ in pos] + zero + sorted(new)
        processed.append(a)
    # safety net: keep only algebraically extreme rays (rank of tight set)
    if rays:
        want = n - len(lines) - 1
        kept = []
        seen = set()
        for r in rays:
            if r in seen:
                continue
            seen.add(r)
            tight = [c for c in processed if dot(c, r) == 0]
            if rank(tight) == want:
                kept.append(r)
        rays = kept
    return lines, rays


@dataclass(frozen=True)
class PolyCone:
    """Rational polyhedral cone with a canonical double description.

    ``rays`` are the primitive extreme rays (lineality, if any, is stored
    as opposite ray pairs); ``facets`` is a minimal irredundant set of
    half-spaces; ``equations`` cut out the linear span when the cone is not
    full-dimensional.
    """

    ambient_dim: int
    dim: int
    rays: tuple
    facets: tuple
    equations: tuple

    def contains(self, x, strict=False):
        if len(x) != self.ambient_dim:
            raise DimensionError(
                f"point has dimension {len(x)}, cone is in dimension {self.ambient_dim}"
            )
        for eq in self.equations:
            if dot(eq, x) != 0:
                return False
        if strict and self.dim == 0:
            return is_zero(x)
        for hs in self.facets:
            val = hs.evaluate(x)
            if val < 0 or (strict and val == 0):
                return False
        return True

    def relative_interior_point(self):
        if self.dim == 0 or not self.rays:
            raise InvalidCone("zero cone has no relative interior ray")
        point = self.rays[0]
        for r in self.rays[1:]:
            point = vadd(point, r)
        return tuple(Fraction(x) for x in point)

    def is_full_dimensional(self):
        return self.dim == self.ambient_dim

    def facet_hyperplanes(self):
        return {hs.hyperplane_key() for hs in self.facets}


def _assemble(generators, n):
    """Canonical PolyCone from any set of generating vectors."""
    gens = sorted({primitive(g) for g in generators if not is_zero(g)})
    if not gens:
        eye = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        return PolyCone(n, 0, (), (), eye)
    dual_lines, dual_rays = _dd(gens, n)
    equations = row_reduce(dual_lines)
    facets = sorted(
        {primitive(reduce_mod_rowspace(q, equations)) for q in dual_rays} - {tuple([0] * n)}
    )
    constraints = list(facets)
    for eq in equations:
        constraints.append(eq)
        constraints.append(vneg(eq))
    lines, rays = _dd(constraints, n)
    ray_set = set(rays)
    for l in lines:
        ray_set.add(l)
        ray_set.add(vneg(l))
    rays = tuple(sorted(ray_set))
    dim = n - len(equations)
    return PolyCone(n, dim, rays, tuple(HalfSpace(f) for f in facets), equations)


def cone_from_rays(rays):
    """Cone generated by the given vectors, reduced to extreme primitive rays."""
    rays = list(rays)
    if not rays:
        raise InvalidCone("no generators given")
    n = len(rays[0])
    for r in rays:
        if len(r) != n:
            raise DimensionError("generators have mixed dimensions")
    if all(is_zero(r) for r in rays):
        raise InvalidCone("all generators are zero")
    return _assemble(rays, n)


def cone_from_halfspaces(halfspaces, ambient_dim, equations=()):
    """Cone cut out by half-spaces (and optional equations)."""
    constraints = [hs.normal if isinstance(hs, HalfSpace) else tuple(hs) for hs in halfspaces]
    for eq in equations:
        eq = tuple(eq)
        constraints.append(eq)
        constraints.append(vneg(eq))
    lines, rays = _dd(constraints, ambient_dim)
    gens = list(rays)
    for l in lines:
        gens.append(l)
        gens.append(vneg(l))
    if not gens:
        eye = tuple(
            tuple(1 if j == i else 0 for j in range(ambient_dim)) for i in range(ambient_dim)
        )
        return PolyCone(ambient_dim, 0, (), (), eye)
    return _assemble(gens, ambient_dim)


def intersect(a, b):
    """Intersection of two cones; may be lower-dimensional."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    return cone_from_halfspaces(
        list(a.facets) + list(b.facets),
        a.ambient_dim,
        equations=list(a.equations) + list(b.equations),
    )


def contains(cone, x, strict=False):
    return cone.contains(x, strict=strict)


def relative_interior_point(cone):
    return cone.relative_interior_point()


def _cell_sort_key(cell):
    return cell.rays


@dataclass(frozen=True)
class Fan:
    """Finite set of equal-dimensional cones with common support.

    Cells are kept in a deterministic order (lexicographic by sorted ray
    lists) so that serialized output is byte-reproducible.
    """

    cells: tuple
    support: PolyCone


def make_fan(cells, support):
    cells = tuple(sorted(set(cells), key=_cell_sort_key))
    return Fan(cells, support)


def common_refinement(fans):
    """Common refinement of fans sharing one support cone."""
    fans = list(fans)
    if not fans:
        raise SupportMismatch("no fans given")
    support = fans[0].support
    for f in fans[1:]:
        if f.support != support:
            raise SupportMismatch("fans do not share a support cone")
    cells = list(fans[0].cells)
    for f in fans[1:]:
        pieces = set()
        for a in cells:
            for b in f.cells:
                c = intersect(a, b)
                if c.dim == support.dim:
                    pieces.add(c)
        cells = list(pieces)
    return make_fan(cells, support)


def hyperplane_refinement(fan):
    """Slice every cell so each lies in one half-space of every facet hyperplane.

    The collected hyperplanes are those spanned by facets of the maximal
    cells (including the support boundary).  Idempotent: slicing introduces
    no hyperplanes outside the collected set.
    """
    hyperplanes = set()
    for cell in fan.cells:
        hyperplanes.update(cell.facet_hyperplanes())
    cells = list(fan.cells)
    for h in sorted(hyperplanes):
        sliced = []
        for cell in cells:
            values = [dot(h, r) for r in cell.rays]
            if any(v > 0 for v in values) and any(v < 0 for v in values):
                for side in (h, vneg(h)):
                    piece = cone_from_halfspaces(
                        list(cell.facets) + [HalfSpace(side)],
                        cell.ambient_dim,
                        equations=cell.equations,
                    )
                    if piece.dim == fan.support.dim:
                        sliced.append(piece)
            else:
                sliced.append(cell)
        cells = sliced
    return make_fan(cells, fan.support)
