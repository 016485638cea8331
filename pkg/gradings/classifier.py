"""
Isomorphism decisions, canonical forms and census enumeration.

Two tuples of a family are isomorphic iff they lie in one orbit of the
family's action: shifts of kappa by G# (or G), g0 -> g^-2 g0, and for
some families a second branch (parity swap with the twist by f, or
(beta, kappa) -> (beta^-1, kappa*)). Decisions search the finitely many
shifts that map the first coset of kappa onto a coset of the target;
for tuples with a form the shifts are further cut down to the solutions
of g^2 = g0 g0'^-1.
"""

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import isqrt

import config
from abelian import (
    Coset,
    GSharpElement,
    all_cosets,
    as_sharp,
    enumerate_bicharacters,
    enumerate_subgroups,
    parity_elements,
    radical,
    solve_double,
)
from forms import act_T_Gsharp
from matrix_algebra import KappaMap
from params import (
    LIE_TAGS,
    LieParams,
    MEvenParams,
    MexEvenParams,
    MexOddParams,
    MOddParams,
    MStarParams,
    QexParams,
    QParams,
    TypeIParams,
    _inverted,
    bicharacter_key,
    queer_support,
    transport_params,
)
from validation import GradingError

logger = logging.getLogger('gradings.classifier')

__all__ = [
    'IsoResult',
    'act_T_Gsharp',
    'iso_M_even',
    'iso_M_odd',
    'iso_Q',
    'iso_MStar',
    'iso_Mex_even',
    'iso_Mex_odd',
    'iso_Qex',
    'iso_typeI',
    'iso_lie',
    'decide',
    'canonicalize',
    'enumerate_census',
]

_FORM_FAMILIES = ('m-star', 'mex-even', 'mex-odd', 'qex')


@dataclass(frozen=True)
class IsoResult:
    """Outcome of an isomorphism decision."""

    isomorphic: bool
    witness: object = None
    branch: str = None
    reason: str = None

    def to_record(self):
        return {
            'isomorphic': self.isomorphic,
            'witness': None if self.witness is None else str(self.witness),
            'branch': self.branch,
        }


# Family tables

def _branches(p):
    """(branch tag, parity of the effective kappa shift) pairs of a family."""
    family = p.family
    if family == 'm-even':
        return (('same', 0), ('swap', 1))
    if family == 'mex-even':
        return (('same', 0), ('swap', 1))
    if family == 'type-i':
        if p.inner.family == 'm-even':
            return (('same', 0), ('swap', 1), ('inverse', 0), ('inverse-swap', 1))
        return (('same', 0), ('inverse', 0))
    return (('same', 0),)


def _frame(p):
    """Everything but kappa, g0 and eta; tuples with different frames are never isomorphic."""
    family = p.family
    if family in ('m-even', 'm-star', 'mex-even'):
        return (family, p.subgroup.elements, bicharacter_key(p.beta))
    if family == 'm-odd':
        return (family, p.subgroup.elements, bicharacter_key(p.beta_tilde))
    if family == 'mex-odd':
        return (family, p.subgroup.elements, bicharacter_key(p.beta_tilde_map), as_sharp(p.tp).key())
    if family in ('q', 'qex'):
        return (family, p.tplus.elements, bicharacter_key(p.beta_plus), p.h.key())
    if family == 'type-i':
        return ('type-i',) + _frame(p.inner)
    raise GradingError(f"No frame for family {family}")


def _source(p, branch):
    """Tuple whose kappa is shifted by the branch (kappa* on inverse branches)."""
    if p.family == 'type-i' and branch.startswith('inverse'):
        return TypeIParams(_inverted(p.inner))
    return p


def _witness(p, shift, branch):
    """Witness recorded for an effective kappa shift."""
    family = p.family
    inner_family = p.inner.family if family == 'type-i' else None
    if family == 'm-even' or inner_family == 'm-even':
        return shift
    return shift.element


def _shift_candidates(kappa, target, parity, base=None):
    """
    Shifts s of the given parity with s x0 in supp(target), x0 the first
    coset of kappa, and matching multiplicities.
    """
    x0, m0 = kappa.entries[0]
    T = kappa.subgroup
    found = set()
    targets = base if base is not None else [y for y, m in target.entries if m == m0]
    for y in targets:
        step = as_sharp(y.rep) * x0.rep.inverse() if isinstance(y, Coset) else y * x0.rep.inverse()
        for t in T.elements:
            s = step * t
            if s.parity == parity:
                found.add(s)
    return sorted(found)


def _square_roots(p, q, branch):
    """g in G with g^2 = g0 g0'^-1 (times f on the swap branch)."""
    m = as_sharp(p.g0) * as_sharp(q.g0).inverse()
    if branch == 'swap':
        m = p.f * m
    if m.parity:
        return []
    return solve_double(p.group, m.element)


# Decisions

def decide(p, q):
    """
    Decide whether two tuples of the same family are isomorphic.

    Args:
        p: GradingParams
        q: GradingParams

    Returns:
        IsoResult; on success the witness and branch satisfy
        transport_params(p.normalized(), witness, branch) == q.normalized()
    """
    if isinstance(p, LieParams) or isinstance(q, LieParams):
        return iso_lie(p, q)
    if p.family != q.family:
        return IsoResult(False, reason=f"families differ: {p.family} vs {q.family}")
    if p.family == 'type-i' and p.inner.family != q.inner.family:
        return IsoResult(False, reason="inner families differ")
    p, q = p.normalized(), q.normalized()
    if p.kappa.size != q.kappa.size:
        return IsoResult(False, reason=f"|kappa| = {p.kappa.size} vs {q.kappa.size}")

    for branch, parity in _branches(p):
        source = _source(p, branch)
        if _frame(source) != _frame(q):
            continue
        shifts = _shift_candidates(source.kappa, q.kappa, parity)
        if p.family in _FORM_FAMILIES:
            roots = {GSharpElement(r, parity) for r in _square_roots(p, q, branch)}
            shifts = [s for s in shifts if s in roots]
        for s in shifts:
            g = _witness(p, s, branch)
            if transport_params(p, g, branch) == q:
                logger.debug(f"{p.family}: isomorphic via g={g}, branch {branch}")
                return IsoResult(True, g, branch)
    return IsoResult(False, reason="no shift maps one tuple onto the other")


def _decider(family):
    def iso(p, q):
        if p.family != family or q.family != family:
            return IsoResult(False, reason=f"expected two {family} tuples")
        return decide(p, q)
    iso.__name__ = f"iso_{family.replace('-', '_')}"
    iso.__doc__ = f"Isomorphism of two {family} tuples."
    return iso


iso_M_even = _decider('m-even')
iso_M_odd = _decider('m-odd')
iso_Q = _decider('q')
iso_MStar = _decider('m-star')
iso_Mex_even = _decider('mex-even')
iso_Mex_odd = _decider('mex-odd')
iso_Qex = _decider('qex')
iso_typeI = _decider('type-i')


def iso_lie(p, q):
    """Gradings on Lie superalgebras are isomorphic iff their associative tuples are."""
    if not (isinstance(p, LieParams) and isinstance(q, LieParams)):
        return IsoResult(False, reason="cannot compare a Lie tuple with an associative one")
    if p.family != q.family:
        return IsoResult(False, reason=f"Lie families differ: {p.family} vs {q.family}")
    return decide(p.inner, q.inner)


# Canonical forms

def canonicalize(p):
    """
    Minimal tuple in the orbit of p.

    The candidates are all transports of p whose kappa contains T or
    (e,1)T; this set depends only on the orbit, so its minimum does too.
    """
    if isinstance(p, LieParams):
        return LieParams(p.family, canonicalize(p.inner))
    p = p.normalized()
    identity = p.group.identity()
    anchors = [GSharpElement(identity, 0), GSharpElement(identity, 1)]
    best = None
    for branch, parity in _branches(p):
        source = _source(p, branch)
        for x, _ in source.kappa.entries:
            single = KappaMap(source.kappa.subgroup, [(x, 1)])
            for s in _shift_candidates(single, None, parity, base=anchors):
                candidate = transport_params(p, _witness(p, s, branch), branch)
                if best is None or candidate.key() < best.key():
                    best = candidate
    return best


# Census

def _even_subgroups(group):
    return enumerate_subgroups(group, graded=False, max_order=config.MAX_SUBGROUP_ORDER)


def _odd_subgroups(group):
    return [T for T in enumerate_subgroups(group, graded=True, max_order=config.MAX_SUBGROUP_ORDER)
            if not T.is_even()]


def _nondegenerate(T):
    return [b for b in enumerate_bicharacters(T, 'alternating') if b.is_nondegenerate()]


def _kappas(subgroup, k):
    cosets = all_cosets(subgroup)
    for combo in combinations_with_replacement(cosets, k):
        yield KappaMap(subgroup, [(c, 1) for c in combo])


def _degree(dim, order):
    """k with k^2 |T| = dim, or None."""
    if dim % order:
        return None
    k = isqrt(dim // order)
    return k if k > 0 and k * k * order == dim else None


def _frames_for(family, group):
    """
    Yield (support, factory) pairs; factory(kappa, g0) builds a tuple.

    g0 is ignored by families without a form.
    """
    if family in ('m-even', 'm-star', 'mex-even'):
        for T in _even_subgroups(group):
            for beta in enumerate_bicharacters(T, 'alternating'):
                if family == 'm-even' and beta.is_nondegenerate():
                    yield T, lambda kappa, g0, T=T, beta=beta: MEvenParams(group, T, beta, kappa)
                elif family == 'm-star' and beta.is_nondegenerate() and T.is_elementary_two():
                    yield T, lambda kappa, g0, T=T, beta=beta: MStarParams(group, T, beta, kappa, g0)
                elif family == 'mex-even' and radical(beta).order == 2:
                    yield T, lambda kappa, g0, T=T, beta=beta: MexEvenParams(group, T, beta, kappa, g0)
    elif family == 'm-odd':
        for T in _odd_subgroups(group):
            for bt in enumerate_bicharacters(T, 'skew'):
                if bt.parity_twist().is_nondegenerate():
                    yield T, lambda kappa, g0, T=T, bt=bt: MOddParams(group, T, bt, kappa)
    elif family == 'mex-odd':
        for T in _odd_subgroups(group):
            for bt in enumerate_bicharacters(T, 'skew'):
                if radical(bt).order != 2:
                    continue
                for tp in parity_elements(T, bt):
                    if tp.parity == 0:
                        yield T, lambda kappa, g0, T=T, bt=bt, tp=tp: MexOddParams(
                            group, T, bt, tp, kappa, g0)
    elif family in ('q', 'qex'):
        involutions = [h for h in group.elements() if (h * h).is_identity()]
        for tplus in _even_subgroups(group):
            for beta_plus in enumerate_bicharacters(tplus, 'alternating'):
                rad = radical(beta_plus).order
                for h in group.elements():
                    support = queer_support(tplus, h)
                    if family == 'q' and rad == 1 and h in involutions:
                        yield support, lambda kappa, g0, tp=tplus, b=beta_plus, h=h: QParams(
                            group, tp, b, h, kappa)
                    elif family == 'qex' and rad == 2 and as_sharp(h * h) in radical(beta_plus).elements \
                            and not (h * h).is_identity():
                        yield support, lambda kappa, g0, tp=tplus, b=beta_plus, h=h: QexParams(
                            group, tp, b, h, kappa, g0)
    elif family == 'type-i':
        for inner in ('m-even', 'm-odd', 'q'):
            for support, factory in _frames_for(inner, group):
                yield support, lambda kappa, g0, f=factory: TypeIParams(f(kappa, g0))
    else:
        raise GradingError(f"Unknown associative family '{family}'")


def _g0_choices(family, group):
    if family in ('m-star', 'mex-even'):
        return group.sharp_elements()
    if family in ('mex-odd', 'qex'):
        return [as_sharp(g) for g in group.elements()]
    return [None]


def _associative_census(family, group, dim):
    found = {}
    for support, factory in _frames_for(family, group):
        k = _degree(dim, support.order)
        if k is None:
            continue
        for kappa in _kappas(support, k):
            for g0 in _g0_choices(family, group):
                if g0 is not None and kappa.paired(g0) != kappa:
                    continue
                params = factory(kappa, g0)
                is_valid, error = params.validate()
                if not is_valid:
                    logger.debug(f"Skipping {family} tuple: {error}")
                    continue
                canonical = canonicalize(params)
                found.setdefault(canonical.key(), canonical)
    return found


def _lie_in_scope(lie):
    kind, m, n = lie.superdimension()
    tag = lie.family
    if tag == 'osp':
        return n >= 2
    if tag == 'p':
        return m >= 3
    if tag in ('q-lie-1', 'q-lie-2'):
        return m >= 3
    return m >= 1 and n >= 1 and not (m == n and m <= 2)


def enumerate_census(family, group, dim):
    """
    Canonical tuples of a family on G, one per isomorphism class.

    Args:
        family: Associative family tag or Lie tag
        group: Finite FinAbGroup
        dim: Dimension of the associative model (of S for Type I pairs)

    Returns:
        List of canonical GradingParams sorted by key

    Raises:
        GradingError: for an infinite or too large group, a dimension
            above the census cap, or an unknown family
    """
    if not group.is_finite():
        raise GradingError(f"Census needs a finite group, got {group}")
    if group.order() > config.CENSUS_MAX_GROUP_ORDER:
        raise GradingError(f"|G| = {group.order()} exceeds {config.CENSUS_MAX_GROUP_ORDER}")
    if dim < 1 or dim > config.CENSUS_MAX_DIM:
        raise GradingError(f"Census dimension must be between 1 and {config.CENSUS_MAX_DIM}")

    if family in LIE_TAGS:
        inner_families = {
            'osp': ('m-star',),
            'p': ('m-star',),
            'q-lie-1': ('type-i',),
            'q-lie-2': ('qex',),
            'a-1': ('type-i',),
            'a-2': ('mex-even', 'mex-odd'),
        }[family]
        found = {}
        for inner_family in inner_families:
            for params in _associative_census(inner_family, group, dim).values():
                lie = LieParams(family, params)
                is_valid, _ = lie.validate()
                if is_valid and _lie_in_scope(lie):
                    found[lie.key()] = lie
    else:
        found = _associative_census(family, group, dim)

    result = sorted(found.values(), key=lambda p: p.key())
    logger.info(f"Census {family} on {group}, dim {dim}: {len(result)} classes")
    return result
