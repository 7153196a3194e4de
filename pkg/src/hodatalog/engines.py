"""Production evaluation engines.

* least_model_seminaive: delta-driven bottom-up evaluation for first-order
  programs (all relations over individuals).
* DemandEngine / solve_demand: demand-driven tabled evaluation for
  higher-order programs.  Ground goals are memoized by their canonical
  syntactic form; the table is driven to a least fixpoint by propagating
  false-to-true flips to recorded dependents.  No monotone domain is ever
  enumerated.
* decide: the unified accept/reject entry point.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .core import (App, Const, Eq, HodlError, OMICRON, Pred, Var, app_spine,
                   arg_types, make_app, type_order)
from .encode import encode_input, merge
from .semantics import Bool, FixpointResult, Ind, Rel, herbrand_universe
from .syntax import render_expr


class BudgetExhaustedError(HodlError):
    """Raised when the step budget runs out; the answer is unknown."""


class EngineError(HodlError):
    pass


@dataclass
class EngineConfig:
    engine: str = "demand"  # naive | seminaive | demand
    step_budget: int = 10 ** 7
    domain_cap: int = 1 << 16
    trace: bool = False


@dataclass(frozen=True)
class Goal:
    """A ground atom: predicate (or closure) head plus argument terms."""
    head: object
    args: tuple

    def to_expr(self):
        h = Pred(self.head) if isinstance(self.head, str) else self.head
        return make_app(h, list(self.args))

    @staticmethod
    def from_expr(e):
        h, args = app_spine(e)
        return Goal(h.name if isinstance(h, Pred) else h, tuple(args))

    def key(self):
        return render_expr(self.to_expr())


# ---------------------------------------------------------------------------
# Semi-naive engine (first-order)

def _compile_atom(e):
    if isinstance(e, Eq):
        return ("eq", _term(e.left), _term(e.right))
    h, args = app_spine(e)
    if not isinstance(h, Pred):
        raise EngineError("non-predicate atom head in first-order clause")
    return ("pred", h.name, [_term(a) for a in args])


def _term(e):
    if isinstance(e, Var):
        return ("v", e.name)
    if isinstance(e, (Const, Pred)):
        return ("c", e.name)
    raise EngineError("nested application in first-order atom argument")


def _match_tuple(args, tup, subst):
    s = subst
    copied = False
    for t, val in zip(args, tup):
        if t[0] == "c":
            if t[1] != val:
                return None
        else:
            bound = s.get(t[1])
            if bound is None:
                if not copied:
                    s = dict(s)
                    copied = True
                s[t[1]] = val
            elif bound != val:
                return None
    return s


class _Matcher:
    """Relations of one evaluation round with lazy per-position indexes."""

    def __init__(self, rels, universe):
        self.rels = rels
        self.universe = universe
        self.indexes = {}

    def candidates(self, name, args, subst):
        rel = self.rels.get(name, ())
        # index on the first bound argument position, if any
        for pos, t in enumerate(args):
            val = t[1] if t[0] == "c" else subst.get(t[1])
            if val is not None:
                idx = self.indexes.setdefault((name, pos), None)
                if idx is None:
                    idx = {}
                    for tup in rel:
                        idx.setdefault(tup[pos], []).append(tup)
                    self.indexes[(name, pos)] = idx
                return idx.get(val, ())
        return rel


def _solve_body(atoms, subst, matcher):
    """Yield substitutions satisfying the remaining atoms.

    atoms is a list of (atom, override) where a non-None override is an
    explicit tuple collection to scan instead of the full relation
    (the semi-naive delta focus, always placed first by the caller).
    """
    if not atoms:
        yield subst
        return
    # selection: delta focus first, then decidable equalities, then the
    # most-bound positive atom
    pick = None
    best_bound = -1
    for i, (atom, override) in enumerate(atoms):
        if override is not None:
            pick = i
            break
        if atom[0] == "eq":
            l, r = atom[1], atom[2]
            lb = l[0] == "c" or l[1] in subst
            rb = r[0] == "c" or r[1] in subst
            if lb or rb:
                pick = i
                break
        else:
            bound = sum(1 for t in atom[2]
                        if t[0] == "c" or t[1] in subst)
            if bound > best_bound:
                best_bound = bound
                pick = i
    if pick is None:
        # only equalities with both sides unbound remain: enumerate one side
        atom = atoms[0][0]
        for c in matcher.universe:
            s = dict(subst)
            s[atom[1][1]] = c
            yield from _solve_body(atoms, s, matcher)
        return
    atom, override = atoms[pick]
    rest = atoms[:pick] + atoms[pick + 1:]
    if atom[0] == "eq":
        l, r = atom[1], atom[2]
        lv = l[1] if l[0] == "c" else subst.get(l[1])
        rv = r[1] if r[0] == "c" else subst.get(r[1])
        if lv is not None and rv is not None:
            if lv == rv:
                yield from _solve_body(rest, subst, matcher)
            return
        s = dict(subst)
        if lv is None:
            s[l[1]] = rv
        else:
            s[r[1]] = lv
        yield from _solve_body(rest, s, matcher)
        return
    name, args = atom[1], atom[2]
    if override is not None:
        rel = override
    else:
        rel = matcher.candidates(name, args, subst)
    for tup in rel:
        s = _match_tuple(args, tup, subst)
        if s is not None:
            yield from _solve_body(rest, s, matcher)


def _heads_from(rule, subst, universe):
    head, formals = rule
    unbound = [f for f in formals if f not in subst]
    for assignment in itertools.product(universe, repeat=len(unbound)):
        s = dict(subst)
        s.update(zip(unbound, assignment))
        yield tuple(s[f] for f in formals)


def least_model_seminaive(prog, return_raw=False):
    """Delta-driven bottom-up fixpoint for first-order programs."""
    for p, ty in prog.signatures.items():
        if type_order(ty) > 1:
            raise EngineError("seminaive engine requires a first-order program"
                              " (predicate %s has order %d)" % (p, type_order(ty)))
    universe = herbrand_universe(prog)
    rules = []
    for cl in prog.clauses:
        atoms = [_compile_atom(b) for b in cl.body]
        rules.append(((cl.head, [f.name for f in cl.formals]), atoms))
    total = {p: set() for p in prog.signatures}
    delta = {p: set() for p in prog.signatures}

    # round 0: rules without positive body atoms
    matcher = _Matcher(total, universe)
    for rule, atoms in rules:
        if any(a[0] == "pred" for a in atoms):
            continue
        for subst in _solve_body([(a, None) for a in atoms], {}, matcher):
            for tup in _heads_from(rule, subst, universe):
                if tup not in total[rule[0]]:
                    total[rule[0]].add(tup)
                    delta[rule[0]].add(tup)

    iterations = 1 if any(delta.values()) else 0
    while any(delta.values()):
        new = {p: set() for p in prog.signatures}
        matcher = _Matcher(total, universe)
        for rule, atoms in rules:
            pred_positions = [i for i, a in enumerate(atoms) if a[0] == "pred"]
            if not pred_positions:
                continue
            for focus in pred_positions:
                name = atoms[focus][1]
                d = delta.get(name)
                if not d:
                    continue
                work = [(atoms[focus], list(d))] + [
                    (a, None) for i, a in enumerate(atoms) if i != focus]
                for subst in _solve_body(work, {}, matcher):
                    for tup in _heads_from(rule, subst, universe):
                        if tup not in total[rule[0]] and tup not in new[rule[0]]:
                            new[rule[0]].add(tup)
        for p, tuples in new.items():
            total[p] |= tuples
        delta = new
        if any(delta.values()):
            iterations += 1

    if return_raw:
        return total, iterations
    interp = {}
    for p, ty in prog.signatures.items():
        if ty == OMICRON:
            interp[p] = Bool(() in total[p])
        else:
            interp[p] = Rel(ty, frozenset(
                tuple(Ind(c) for c in tup) for tup in total[p]))
    return FixpointResult(interp, iterations)


# ---------------------------------------------------------------------------
# Demand-driven tabled engine

def _subst_expr(e, subst):
    if isinstance(e, Var):
        got = subst.get(e.name)
        if got is None:
            return e
        return got
    if isinstance(e, App):
        return App(_subst_expr(e.fn, subst), _subst_expr(e.arg, subst))
    if isinstance(e, Eq):
        return Eq(_subst_expr(e.left, subst), _subst_expr(e.right, subst))
    return e


def _free_vars(e, acc):
    if isinstance(e, Var):
        acc.add(e.name)
    elif isinstance(e, App):
        _free_vars(e.fn, acc)
        _free_vars(e.arg, acc)
    elif isinstance(e, Eq):
        _free_vars(e.left, acc)
        _free_vars(e.right, acc)


class DemandEngine:
    """Tabled evaluation of ground goals against a fixed program.

    Table entries are canonical renderings of fully flattened ground atoms;
    closure-headed atoms unfold by spine flattening.  Entries start false
    and may flip to true exactly once; flips re-enqueue recorded dependents,
    so the stable table is the least fixpoint over the discovered goals.
    """

    def __init__(self, prog, cfg=None):
        self.prog = prog
        self.cfg = cfg or EngineConfig()
        self.universe = herbrand_universe(prog)
        self.clauses = {}
        for cl in prog.clauses:
            self.clauses.setdefault(cl.head, []).append(cl)
        self.table = {}
        self.goal_exprs = {}
        self.deps = {}
        self.pending = deque()
        self.steps = 0

    def solve(self, goal):
        """Truth of a ground atom (Goal or Expr) in the least model."""
        if isinstance(goal, Goal):
            goal = goal.to_expr()
        key = self._intern(goal, dependent=None)
        self.pending.append(key)
        self._run()
        return self.table[key]

    def _intern(self, atom, dependent):
        key = render_expr(atom)
        if dependent is not None:
            self.deps.setdefault(key, set()).add(dependent)
        if key not in self.table:
            self.table[key] = False
            self.goal_exprs[key] = atom
            self.pending.append(key)
            if self.cfg.trace:
                print("%s -> false @%d" % (key, self.steps))
        return key

    def _run(self):
        while self.pending:
            key = self.pending.popleft()
            if self.table[key]:
                continue
            self.steps += 1
            if self.steps > self.cfg.step_budget:
                raise BudgetExhaustedError("unknown: budget")
            if self._eval_goal(key, self.goal_exprs[key]):
                self.table[key] = True
                if self.cfg.trace:
                    print("%s -> true @%d" % (key, self.steps))
                for d in self.deps.get(key, ()):
                    if not self.table[d]:
                        self.pending.append(d)

    def _eval_goal(self, key, atom):
        if isinstance(atom, Eq):
            return atom.left == atom.right
        head, args = app_spine(atom)
        if not isinstance(head, Pred):
            raise EngineError("goal head is not a predicate constant: %r" % (head,))
        for cl in self.clauses.get(head.name, ()):
            subst = {f.name: a for f, a in zip(cl.formals, args)}
            if self._solve_atoms(key, list(cl.body), subst):
                return True
        return False

    def _solve_atoms(self, key, atoms, subst):
        if not atoms:
            return True
        # prefer an equality that can bind or be decided immediately
        pick = 0
        for i, a in enumerate(atoms):
            if isinstance(a, Eq):
                l = _subst_expr(a.left, subst)
                r = _subst_expr(a.right, subst)
                if isinstance(l, Const) or isinstance(r, Const):
                    pick = i
                    break
            else:
                pick = i
                break
        atom = _subst_expr(atoms[pick], subst)
        rest = atoms[:pick] + atoms[pick + 1:]
        if isinstance(atom, Eq):
            l, r = atom.left, atom.right
            if isinstance(l, Const) and isinstance(r, Const):
                return l == r and self._solve_atoms(key, rest, subst)
            if isinstance(l, Var) and isinstance(r, Const):
                s = dict(subst)
                s[l.name] = r
                return self._solve_atoms(key, rest, s)
            if isinstance(r, Var) and isinstance(l, Const):
                s = dict(subst)
                s[r.name] = l
                return self._solve_atoms(key, rest, s)
            # both sides unbound individual variables: enumerate one
            for c in self.universe:
                s = dict(subst)
                s[l.name] = Const(c)
                if self._solve_atoms(key, atoms, s):
                    return True
            return False
        free = set()
        _free_vars(atom, free)
        free = sorted(free)
        for assignment in itertools.product(self.universe, repeat=len(free)):
            bound = dict(subst)
            ext = {v: Const(c) for v, c in zip(free, assignment)}
            bound.update(ext)
            ground = _subst_expr(atom, ext)
            sub = self._intern(ground, dependent=key)
            if self.table[sub] and self._solve_atoms(key, rest, bound):
                return True
        return False


def solve_demand(prog, goal, cfg=None):
    """Truth of a single ground goal in the least model of prog."""
    return DemandEngine(prog, cfg).solve(goal)


# ---------------------------------------------------------------------------
# Unified decision entry point

def decide(prog, w, cfg=None):
    """Run the selected engine on prog merged with the encoded input."""
    cfg = cfg or EngineConfig()
    merged = merge(prog, encode_input(w))
    if cfg.engine == "seminaive":
        result = least_model_seminaive(merged)
        accept = result.interpretation.get("accept", Bool(False)) == Bool(True)
    elif cfg.engine == "naive":
        from .semantics import least_model_naive
        result = least_model_naive(merged, cap=cfg.domain_cap)
        accept = result.interpretation.get("accept", Bool(False)) == Bool(True)
    elif cfg.engine == "demand":
        accept = DemandEngine(merged, cfg).solve(Pred("accept"))
    else:
        raise EngineError("unknown engine %r" % cfg.engine)
    return "accept" if accept else "reject"
