"""Formula trees shared by the team and hyper languages.

One node type covers plain LTL, team formulas (Boolean disjunction `OR`
and Boolean negation `~` added) and HyperLTL matrices (trace-indexed
atoms plus unrestricted classical negation).  Nodes are interned, so
structural equality coincides with identity and formulas are cheap
dictionary keys.

Team-language trees are kept in negation normal form: classical `!`
exists only as a negated atom.  `F x` is eliminated at construction
into `1 U x`.  A Release node (the dual of Until) exists so that
classical negation stays closed over LTL; it is never produced by the
surface grammar for team formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import FragmentViolation

# Node kinds.
TRUE = "true"
FALSE = "false"
ATOM = "atom"
NATOM = "natom"
NOT = "not"            # classical negation over arbitrary subformulas (hyper matrices only)
AND = "and"
OR = "or"              # splitting disjunction
OVOR = "ovor"          # Boolean (team) disjunction
SIMNEG = "simneg"      # Boolean (team) negation
NEXT = "next"
GLOBALLY = "globally"
UNTIL = "until"
RELEASE = "release"

LEAF_KINDS = frozenset({TRUE, FALSE, ATOM, NATOM})
UNARY_KINDS = frozenset({NOT, SIMNEG, NEXT, GLOBALLY})
BINARY_KINDS = frozenset({AND, OR, OVOR, UNTIL, RELEASE})


@dataclass(frozen=True, eq=False)
class Formula:
    """An interned formula node; compare with `is` / `==` interchangeably."""

    kind: str
    prop: object          # proposition payload for atoms, else None
    var: str | None       # trace variable for hyper atoms, else None
    children: tuple["Formula", ...]

    def __repr__(self):
        return f"Formula<{ast_repr(self)}>"


_INTERN: dict[tuple, Formula] = {}


def _mk(kind: str, prop=None, var=None, children: tuple = ()) -> Formula:
    key = (kind, prop, var, tuple(id(c) for c in children))
    node = _INTERN.get(key)
    if node is None:
        node = Formula(kind, prop, var, children)
        _INTERN[key] = node
    return node


TRUE_F = _mk(TRUE)
FALSE_F = _mk(FALSE)


def atom(prop, var: str | None = None) -> Formula:
    return _mk(ATOM, prop, var)


def natom(prop, var: str | None = None) -> Formula:
    return _mk(NATOM, prop, var)


def and_(a: Formula, b: Formula) -> Formula:
    return _mk(AND, children=(a, b))


def or_(a: Formula, b: Formula) -> Formula:
    return _mk(OR, children=(a, b))


def ovor(a: Formula, b: Formula) -> Formula:
    return _mk(OVOR, children=(a, b))


def simneg(a: Formula) -> Formula:
    return _mk(SIMNEG, children=(a,))


def next_(a: Formula) -> Formula:
    return _mk(NEXT, children=(a,))


def globally(a: Formula) -> Formula:
    return _mk(GLOBALLY, children=(a,))


def until(a: Formula, b: Formula) -> Formula:
    return _mk(UNTIL, children=(a, b))


def release(a: Formula, b: Formula) -> Formula:
    return _mk(RELEASE, children=(a, b))


def finally_(a: Formula) -> Formula:
    return until(TRUE_F, a)


def not_(a: Formula) -> Formula:
    """Classical negation; folds over literals so `!p` is always a NegAtom."""
    if a.kind == ATOM:
        return natom(a.prop, a.var)
    if a.kind == NATOM:
        return atom(a.prop, a.var)
    if a.kind == TRUE:
        return FALSE_F
    if a.kind == FALSE:
        return TRUE_F
    if a.kind == NOT:
        return a.children[0]
    return _mk(NOT, children=(a,))


def conj(a: Formula, b: Formula) -> Formula:
    """Conjunction that drops constant-true operands."""
    if a is TRUE_F:
        return b
    if b is TRUE_F:
        return a
    return and_(a, b)


def walk(f: Formula):
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children)


_DEPTH: dict[Formula, int] = {}


def formula_depth(f: Formula) -> int:
    """Connective nesting depth; literals and constants have depth 0."""
    d = _DEPTH.get(f)
    if d is None:
        d = 0 if not f.children else 1 + max(formula_depth(c) for c in f.children)
        _DEPTH[f] = d
    return d


def formula_size(f: Formula) -> int:
    return sum(1 for _ in walk(f))


_TEAM_FREE: dict[Formula, bool] = {}


def is_team_free(f: Formula) -> bool:
    """True when the tree contains neither `OR` nor `~`."""
    v = _TEAM_FREE.get(f)
    if v is None:
        if f.kind in (OVOR, SIMNEG):
            v = False
        else:
            v = all(is_team_free(c) for c in f.children)
        _TEAM_FREE[f] = v
    return v


def is_hyper_free(f: Formula) -> bool:
    """True when no node uses classical `not` or a trace variable."""
    return all(n.kind != NOT and n.var is None for n in walk(f))


def is_pure_ltl(f: Formula) -> bool:
    return is_team_free(f) and is_hyper_free(f)


class FragmentTag(Enum):
    LTL = "LTL"
    TEAM_OV = "TeamOv"
    TEAM_LEFT_DC_SIM = "TeamLeftDcSim"
    TEAM_SIM = "TeamSim"
    HYPER_QF = "HyperQF"
    FORALL_ONE = "ForallOne"
    Q_ONE = "QOne"
    FORALL_STAR = "ForallStar"
    PBC_FORALL_ONE = "PBCForallOne"
    BC_Q_ONE = "BCQOne"
    BC_HYPER = "BCHyper"


_LEFT_DC: dict[Formula, bool] = {}


def is_left_dc(f: Formula) -> bool:
    """`~` never occurs under `G` or on the left of `U`."""
    v = _LEFT_DC.get(f)
    if v is None:
        if f.kind == GLOBALLY:
            v = is_team_free(f.children[0])
        elif f.kind == UNTIL:
            v = is_team_free(f.children[0]) and is_left_dc(f.children[1])
        else:
            v = all(is_left_dc(c) for c in f.children)
        _LEFT_DC[f] = v
    return v


# ---------------------------------------------------------------------------
# HyperLTL sentences and their Boolean closures.

FORALL = "forall"
EXISTS = "exists"

H_SENTENCE = "sentence"
H_AND = "hand"
H_OR = "hor"
H_NOT = "hnot"


@dataclass(frozen=True)
class HyperFormula:
    """Either a quantified sentence (prefix + matrix) or a Boolean
    combination of such sentences; the two layers never interleave."""

    kind: str
    prefix: tuple[tuple[str, str], ...] = ()
    matrix: Formula | None = None
    parts: tuple["HyperFormula", ...] = ()

    def __repr__(self):
        return f"HyperFormula<{ast_repr(self)}>"


def sentence(prefix, matrix: Formula) -> HyperFormula:
    prefix = tuple((q, v) for q, v in prefix)
    for q, _ in prefix:
        if q not in (FORALL, EXISTS):
            raise ValueError(f"bad quantifier {q!r}")
    seen = set()
    for _, v in prefix:
        if v in seen:
            raise FragmentViolation(f"trace variable {v!r} bound twice")
        seen.add(v)
    return HyperFormula(H_SENTENCE, prefix=prefix, matrix=matrix)


def hand(a: HyperFormula, b: HyperFormula) -> HyperFormula:
    return HyperFormula(H_AND, parts=(a, b))


def hor(a: HyperFormula, b: HyperFormula) -> HyperFormula:
    return HyperFormula(H_OR, parts=(a, b))


def hnot(a: HyperFormula) -> HyperFormula:
    return HyperFormula(H_NOT, parts=(a,))


def matrix_vars(f: Formula) -> frozenset[str]:
    return frozenset(n.var for n in walk(f) if n.var is not None)


def hyper_sentences(h: HyperFormula):
    """All quantified sentences at the leaves of a closure tree."""
    if h.kind == H_SENTENCE:
        yield h
    else:
        for p in h.parts:
            yield from hyper_sentences(p)


def is_closed(h: HyperFormula) -> bool:
    for s in hyper_sentences(h):
        if not matrix_vars(s.matrix) <= {v for _, v in s.prefix}:
            return False
    return True


def _closure_positive(h: HyperFormula) -> bool:
    if h.kind == H_NOT:
        return False
    if h.kind == H_SENTENCE:
        return True
    return all(_closure_positive(p) for p in h.parts)


def classify(f) -> frozenset[FragmentTag]:
    """All fragments the formula syntactically belongs to."""
    if isinstance(f, Formula):
        if not is_hyper_free(f):
            raise FragmentViolation(
                "classical negation / trace variables do not form a team formula")
        tags = {FragmentTag.TEAM_SIM}
        if is_left_dc(f):
            tags.add(FragmentTag.TEAM_LEFT_DC_SIM)
        if is_team_free(f):
            tags.update((FragmentTag.TEAM_OV, FragmentTag.LTL))
        return frozenset(tags)
    if isinstance(f, HyperFormula):
        tags = set()
        closed = is_closed(f)
        if f.kind == H_SENTENCE:
            if not f.prefix:
                tags.add(FragmentTag.HYPER_QF)
            if closed:
                if all(q == FORALL for q, _ in f.prefix):
                    tags.add(FragmentTag.FORALL_STAR)
                if len(f.prefix) == 1:
                    tags.add(FragmentTag.Q_ONE)
                    if f.prefix[0][0] == FORALL:
                        tags.add(FragmentTag.FORALL_ONE)
        if closed:
            tags.add(FragmentTag.BC_HYPER)
            leaves = list(hyper_sentences(f))
            leaf_tags = [classify(s) for s in leaves]
            if all(FragmentTag.Q_ONE in t for t in leaf_tags):
                tags.add(FragmentTag.BC_Q_ONE)
            if _closure_positive(f) and all(
                    FragmentTag.FORALL_ONE in t for t in leaf_tags):
                tags.add(FragmentTag.PBC_FORALL_ONE)
        return frozenset(tags)
    raise TypeError(f"cannot classify {type(f).__name__}")


# ---------------------------------------------------------------------------
# Syntactic maps: dualization, NNF pushing, hyperification.

def dual(a: Formula) -> Formula:
    """Negation normal form of the classical negation of a pure LTL formula."""
    if not is_pure_ltl(a):
        raise FragmentViolation("dual() is defined on pure LTL formulas only")
    return _dual(a)


def _dual(a: Formula) -> Formula:
    k = a.kind
    if k == TRUE:
        return FALSE_F
    if k == FALSE:
        return TRUE_F
    if k == ATOM:
        return natom(a.prop, a.var)
    if k == NATOM:
        return atom(a.prop, a.var)
    if k == AND:
        return or_(_dual(a.children[0]), _dual(a.children[1]))
    if k == OR:
        return and_(_dual(a.children[0]), _dual(a.children[1]))
    if k == NEXT:
        return next_(_dual(a.children[0]))
    if k == GLOBALLY:
        return until(TRUE_F, _dual(a.children[0]))
    if k == UNTIL:
        # F x (= 1 U x) dualizes to G !x, keeping dual an involution.
        if a.children[0] is TRUE_F:
            return globally(_dual(a.children[1]))
        return release(_dual(a.children[0]), _dual(a.children[1]))
    if k == RELEASE:
        return until(_dual(a.children[0]), _dual(a.children[1]))
    raise FragmentViolation(f"dual() cannot handle node kind {k!r}")


def nnf(f: Formula) -> Formula:
    """Push classical negation down to atoms in a matrix or LTL tree."""
    return _nnf(f, True)


def _nnf(f: Formula, pol: bool) -> Formula:
    k = f.kind
    if k == NOT:
        return _nnf(f.children[0], not pol)
    if k == TRUE:
        return TRUE_F if pol else FALSE_F
    if k == FALSE:
        return FALSE_F if pol else TRUE_F
    if k == ATOM:
        return atom(f.prop, f.var) if pol else natom(f.prop, f.var)
    if k == NATOM:
        return natom(f.prop, f.var) if pol else atom(f.prop, f.var)
    if k == AND:
        l, r = (_nnf(c, pol) for c in f.children)
        return and_(l, r) if pol else or_(l, r)
    if k == OR:
        l, r = (_nnf(c, pol) for c in f.children)
        return or_(l, r) if pol else and_(l, r)
    if k == NEXT:
        return next_(_nnf(f.children[0], pol))
    if k == GLOBALLY:
        if pol:
            return globally(_nnf(f.children[0], True))
        return until(TRUE_F, _nnf(f.children[0], False))
    if k == UNTIL:
        if pol:
            return until(_nnf(f.children[0], True), _nnf(f.children[1], True))
        if f.children[0] is TRUE_F:
            return globally(_nnf(f.children[1], False))
        return release(_nnf(f.children[0], False), _nnf(f.children[1], False))
    if k == RELEASE:
        if pol:
            return release(_nnf(f.children[0], True), _nnf(f.children[1], True))
        return until(_nnf(f.children[0], False), _nnf(f.children[1], False))
    raise FragmentViolation(f"nnf() cannot handle node kind {k!r}")


def hyperify(a: Formula, var: str) -> HyperFormula:
    """Index every proposition of a pure LTL formula with a trace variable."""
    if not is_pure_ltl(a):
        raise FragmentViolation("hyperify() expects a pure LTL formula")
    return HyperFormula(H_SENTENCE, prefix=(), matrix=hyperify_matrix(a, var))


def hyperify_matrix(a: Formula, var: str) -> Formula:
    if a.kind == ATOM:
        return atom(a.prop, var)
    if a.kind == NATOM:
        return natom(a.prop, var)
    if not a.children:
        return a
    return _mk(a.kind, a.prop, a.var,
               tuple(hyperify_matrix(c, var) for c in a.children))


def dehyperify(m, var: str) -> Formula:
    """Strip a single trace variable from a matrix, pushing `!` to atoms."""
    if isinstance(m, HyperFormula):
        if m.kind != H_SENTENCE or m.prefix:
            raise FragmentViolation("dehyperify() expects a quantifier-free matrix")
        m = m.matrix
    used = matrix_vars(m)
    if not used <= {var}:
        raise FragmentViolation(
            f"matrix mentions variables {sorted(used - {var})} besides {var!r}")
    return _strip_var(nnf(m))


def _strip_var(f: Formula) -> Formula:
    if f.kind in (ATOM, NATOM):
        return _mk(f.kind, f.prop, None)
    if not f.children:
        return f
    return _mk(f.kind, f.prop, None, tuple(_strip_var(c) for c in f.children))


def rename_matrix_vars(f: Formula, mapping: dict[str, str]) -> Formula:
    if f.kind in (ATOM, NATOM) and f.var is not None:
        return _mk(f.kind, f.prop, mapping.get(f.var, f.var))
    if not f.children:
        return f
    return _mk(f.kind, f.prop, f.var,
               tuple(rename_matrix_vars(c, mapping) for c in f.children))


def map_atoms(f: Formula, mapping: dict) -> Formula:
    """Substitute proposition names; used by tests for symmetry pruning."""
    if f.kind in (ATOM, NATOM):
        return _mk(f.kind, mapping.get(f.prop, f.prop), f.var)
    if not f.children:
        return f
    return _mk(f.kind, f.prop, f.var, tuple(map_atoms(c, mapping) for c in f.children))


# ---------------------------------------------------------------------------
# Debug tree rendering for the CLI.

_KIND_NAMES = {
    TRUE: "True", FALSE: "False", ATOM: "Atom", NATOM: "NegAtom", NOT: "Not",
    AND: "And", OR: "Or", OVOR: "OvOr", SIMNEG: "BoolNeg", NEXT: "Next",
    GLOBALLY: "Globally", UNTIL: "Until", RELEASE: "Release",
}


def ast_repr(f) -> str:
    if isinstance(f, Formula):
        name = _KIND_NAMES[f.kind]
        if f.kind in (ATOM, NATOM):
            label = f.prop if f.var is None else f"{f.prop}@{f.var}"
            return f"{name}({label})"
        if not f.children:
            return name
        return f"{name}({', '.join(ast_repr(c) for c in f.children)})"
    if isinstance(f, HyperFormula):
        if f.kind == H_SENTENCE:
            pre = "".join(f"{q.capitalize()}({v}, " for q, v in f.prefix)
            return pre + ast_repr(f.matrix) + ")" * len(f.prefix)
        name = {H_AND: "And", H_OR: "Or", H_NOT: "Not"}[f.kind]
        return f"{name}({', '.join(ast_repr(p) for p in f.parts)})"
    raise TypeError(type(f).__name__)
