"""Forward chaining to the least fixed point, with provenance.

Evaluation goes in rounds.  Each round collects every rule instance whose
premises are already known and adds the new conclusions; when one fact has
several derivations in the same round the smallest (rule id, premises) wins.
Facts and their derivation trees therefore do not depend on the order in
which rules are tried.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources

from obcalc.infer.model import (
    ASSERTED,
    Derivation,
    Fact,
    InferError,
    Program,
    auto_periodic,
    family_key,
    load_program,
)
from obcalc.mcg import PseudoAnosov, least_rotation, murasugi_ops


def load_rules():
    text = resources.files("obcalc.infer").joinpath("rules.json").read_text(encoding="utf-8")
    return {r["id"]: r for r in json.loads(text)["rules"]}


RULES = load_rules()


class ConflictError(InferError):
    def __init__(self, first, second, closure):
        self.facts = (first, second)
        self.closure = closure
        trees = "\n".join(closure.render(f) for f in (first, second))
        super().__init__(f"contradiction between {first} and {second}:\n{trees}")


def _d(rule, *premises, step=None, note=""):
    return Derivation(rule, tuple(sorted(premises, key=Fact.sort_key)), step, note)


# --------------------------------------------------------------------------
# rules; each takes (program, known) and yields (fact, derivation)


def _by_pred(known, pred):
    return [f for f in known if f.predicate == pred]


def r_positive(prog, known):
    for sid, sub in prog.subjects.items():
        if sub.book is not None and sub.book.monodromy.is_positive():
            yield Fact(sid, "stein_fillable"), _d("R-positive", note=f"monodromy {sub.book.monodromy} is positive")


def r_stein(prog, known):
    for f in _by_pred(known, "stein_fillable"):
        yield Fact(f.subject, "c_nonzero"), _d("R-stein", f)


def r_tight(prog, known):
    for f in _by_pred(known, "c_nonzero"):
        yield Fact(f.subject, "tight"), _d("R-tight", f)


def r_nontor(prog, known):
    for f in _by_pred(known, "c_nonzero"):
        g = Fact(f.subject, "c1_nontorsion")
        if g in known:
            yield Fact(f.subject, "condition_R"), _d("R-nontor", f, g)


def r_planar(prog, known):
    for f in _by_pred(known, "condition_R"):
        yield Fact(f.subject, "sg_ge", 1), _d("R-planar", f)
    for f in _by_pred(known, "sg_eq"):
        if f.arg == 0:
            yield Fact(f.subject, "in_im_U_all_d"), _d("R-planar", f)


def r_ot_sg(prog, known):
    for f in _by_pred(known, "overtwisted"):
        yield Fact(f.subject, "sg_eq", 0), _d("R-OT-sg", f)


def r_sg_page(prog, known):
    for sid, sub in prog.subjects.items():
        if sub.book is None:
            continue
        g = sub.book.genus
        if g == 0:
            yield Fact(sid, "sg_eq", 0), _d("R-sg-page", note="planar page")
            continue
        f = Fact(sid, "sg_ge", g)
        if f in known:
            yield Fact(sid, "sg_eq", g), _d("R-sg-page", f, note=f"page genus {g}")


def r_periodic(prog, known):
    for sid, sub in prog.subjects.items():
        pd = auto_periodic(sub)
        if pd is None:
            continue
        note = "boundary coefficients " + ", ".join(str(c) for c in pd.fdtcs)
        if pd.nonnegative:
            yield Fact(sid, "tight"), _d("R-periodic", note=note)
            yield Fact(sid, "stein_fillable"), _d("R-periodic", note=note)
        else:
            yield Fact(sid, "overtwisted"), _d("R-periodic", note=note)


def r_bound(prog, known):
    for sid, sub in prog.subjects.items():
        pd = auto_periodic(sub)
        if pd is None or pd.g != 1:
            continue
        f = Fact(sid, "tight")
        if f in known:
            yield Fact(sid, "binding_bound_ok"), _d("R-bound", f, note=f"genus one, r = {pd.r}")


def r_pa(prog, known):
    for sid, sub in prog.subjects.items():
        v = sub.foliation_verdict
        if v is not None and v.verdict == "in_im_U_all_d":
            yield Fact(sid, "in_im_U_all_d"), _d("R-pa", note=v.reason)


# maps with F(c(source)) = c(target)
_TRANSPORT = {"cap": ("R-cap", "R-capR", "R-capU"), "twist": ("R-twist",) * 3, "stab": ("R-stab",) * 3}


def r_transport(prog, known):
    for link in prog.links:
        if link.kind not in _TRANSPORT:
            continue
        c_rule, r_rule, u_rule = _TRANSPORT[link.kind]
        src, tgt = link.inputs[0], link.output
        for pred, frm, to, rule in (
            ("c_nonzero", tgt, src, c_rule),
            ("c_zero", src, tgt, c_rule),
            ("condition_R", tgt, src, r_rule),
            ("in_im_U_all_d", src, tgt, u_rule),
        ):
            f = Fact(frm, pred)
            if f in known:
                yield Fact(to, pred), _d(rule, f, step=link.step)


def r_stein_obstruction(prog, known):
    for link in prog.links:
        if link.kind == "stein_cap":
            yield Fact(link.output, "c_zero"), _d(
                "R-stein-obstruction", step=link.step, note=f"capping {link.inputs[0]} declared Stein"
            )


def r_combine(prog, known):
    for link in prog.links:
        if link.kind in ("compose", "glue"):
            fs = [Fact(s, "c_nonzero") for s in link.inputs]
            if all(f in known for f in fs):
                rule = "R-comult" if link.kind == "compose" else "R-glue"
                yield Fact(link.output, "c_nonzero"), _d(rule, *fs, step=link.step)
        elif link.kind == "self_glue":
            f = Fact(link.inputs[0], "c_nonzero")
            if f in known:
                yield Fact(link.output, "c_nonzero"), _d("R-selfglue", f, step=link.step)


def _rotations(n):
    return [n[i:] + n[:i] for i in range(len(n))]


def r_family(prog, known):
    keyed = {}
    for sid, sub in prog.subjects.items():
        key = family_key(sub)
        if key is not None:
            keyed[sid] = key
    for x, kx in keyed.items():
        fx = Fact(x, "condition_R")
        if kx[0] != "pa" or fx not in known or kx[1] != 2:
            continue
        n = kx[2]
        minus = {least_rotation(murasugi_ops(r, "minus")) for r in _rotations(n)}
        zero = {least_rotation(murasugi_ops(r, "zero")) for r in _rotations(n)}
        for y, ky in keyed.items():
            if ky[0] != "pa" or y == x:
                continue
            if ky[1] == 2 and ky[2] in minus:
                yield Fact(y, "condition_R"), _d("R-nminus", fx, note=f"{list(ky[2])} = {list(n)}^-")
            if ky[1] == 2 and ky[2] in zero:
                yield Fact(y, "condition_R"), _d("R-nzero", fx, note=f"{list(ky[2])} = {list(n)}^0")
            if ky[1] > 2 and ky[2] == n:
                yield Fact(y, "condition_R"), _d("R-dtwist", fx, note=f"d = {ky[1]}")


def r_torus_tight(prog, known):
    for sid, sub in prog.subjects.items():
        nf = sub.torus_class
        if isinstance(nf, PseudoAnosov):
            pred = "tight" if nf.d > 0 else "overtwisted"
            yield Fact(sid, pred), _d("R-torus-tight", note=f"normal form n = {list(nf.n)}, d = {nf.d}")


def r_conj(prog, known):
    groups = {}
    for sid, sub in prog.subjects.items():
        key = family_key(sub)
        if key is not None:
            groups.setdefault(key, []).append(sid)
    for members in groups.values():
        if len(members) < 2:
            continue
        for f in list(known):
            if f.subject in members:
                for y in members:
                    if y != f.subject:
                        yield Fact(y, f.predicate, f.arg), _d("R-conj", f, note="same normal form")


RULE_FUNCS = {
    "R-positive": r_positive,
    "R-stein": r_stein,
    "R-tight": r_tight,
    "R-nontor": r_nontor,
    "R-planar": r_planar,
    "R-OT-sg": r_ot_sg,
    "R-sg-page": r_sg_page,
    "R-periodic": r_periodic,
    "R-bound": r_bound,
    "R-pa": r_pa,
    "R-transport": r_transport,
    "R-stein-obstruction": r_stein_obstruction,
    "R-combine": r_combine,
    "R-family": r_family,
    "R-torus-tight": r_torus_tight,
    "R-conj": r_conj,
}


# --------------------------------------------------------------------------
# conflicts


def _conflicts(known):
    by_subject = {}
    for f in known:
        by_subject.setdefault(f.subject, set()).add(f)
    for sid in sorted(by_subject):
        fs = by_subject[sid]
        for a, b in (("c_nonzero", "c_zero"), ("tight", "overtwisted"), ("condition_R", "in_im_U_all_d")):
            fa, fb = Fact(sid, a), Fact(sid, b)
            if fa in fs and fb in fs:
                return fa, fb
        ge = sorted(f for f in fs if f.predicate == "sg_ge")
        eq = sorted(f for f in fs if f.predicate == "sg_eq")
        for i, e1 in enumerate(eq):
            for e2 in eq[i + 1 :]:
                return e1, e2
        for e in eq:
            for g in ge:
                if g.arg > e.arg:
                    return g, e
    return None


# --------------------------------------------------------------------------


@dataclass
class Closure:
    program: Program
    facts: dict  # Fact -> Derivation
    rounds: int

    def __contains__(self, fact):
        return fact in self.facts

    def __iter__(self):
        return iter(sorted(self.facts, key=Fact.sort_key))

    def derived(self):
        return [f for f in self if not self.facts[f].asserted]

    def tree(self, fact):
        der = self.facts[fact]
        node = {"fact": fact.id}
        if der.asserted:
            node["rule"] = "asserted"
            return node
        node["rule"] = der.rule
        node["statement"] = RULES[der.rule]["statement"]
        if der.step is not None:
            node["step"] = der.step
        if der.note:
            node["note"] = der.note
        node["premises"] = [self.tree(p) for p in der.premises]
        return node

    def rule_path(self, fact):
        """Rules from the deepest first premise up to ``fact`` (leftmost spine)."""
        out = []
        der = self.facts[fact]
        while not der.asserted:
            out.append(der.rule)
            # follow the premise with the longest derivation chain
            if not der.premises:
                break
            nxt = max(der.premises, key=self.depth)
            der = self.facts[nxt]
        return list(reversed(out))

    def depth(self, fact):
        der = self.facts[fact]
        if der.asserted or not der.premises:
            return 0 if der.asserted else 1
        return 1 + max(self.depth(p) for p in der.premises)

    def render(self, fact, indent=0):
        der = self.facts.get(fact)
        pad = "  " * indent
        if der is None:
            return f"{pad}{fact.id}  [unknown]"
        if der.asserted:
            return f"{pad}{fact.id}  [asserted]"
        extra = []
        if der.step is not None:
            extra.append(f"step {der.step}")
        if der.note:
            extra.append(der.note)
        tail = f"; {'; '.join(extra)}" if extra else ""
        lines = [f"{pad}{fact.id}  [{der.rule}{tail}]"]
        lines += [self.render(p, indent + 1) for p in der.premises]
        return "\n".join(lines)

    def as_dict(self):
        return {
            "facts": [
                {"fact": f.id, "subject": f.subject, "predicate": f.predicate, "arg": f.arg,
                 "derivation": self.tree(f)}
                for f in self
            ],
            "rounds": self.rounds,
        }


def rule_ids():
    return list(RULE_FUNCS)


def run(script, facts=(), rule_order=None, seed=None):
    """Close ``facts`` plus the script's asserted facts under the rules.

    ``script`` is a :class:`Program`, a dict or JSON text.  ``rule_order``
    (a list of keys of ``RULE_FUNCS``) or ``seed`` (random shuffle) only change
    the order rules are tried in; the result is the same.
    """
    prog = script if isinstance(script, Program) else load_program(script)
    known = {}
    for f in list(prog.facts) + list(facts):
        prog.subject(f.subject)
        known[f] = ASSERTED
    order = list(rule_order) if rule_order is not None else rule_ids()
    if seed is not None:
        random.Random(seed).shuffle(order)
    hit = _conflicts(known)
    if hit:
        raise ConflictError(*hit, Closure(prog, known, 0))
    rounds = 0
    while True:
        new = {}
        for name in order:
            for fact, der in RULE_FUNCS[name](prog, known):
                if fact in known:
                    continue
                if fact not in new or der.key() < new[fact].key():
                    new[fact] = der
        if not new:
            break
        rounds += 1
        known.update(new)
        hit = _conflicts(known)
        if hit:
            raise ConflictError(*hit, Closure(prog, known, rounds))
    return Closure(prog, known, rounds)
