"""Facts, derivations and the script format the engine reads."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from obcalc import foliations
from obcalc.domains import PeriodicData
from obcalc.mcg import MCG_ALPHABET, Periodic, PseudoAnosov, classify, normal_form_word
from obcalc.openbook import (
    CurveInfo,
    OpenBookDesc,
    SurfaceSig,
    UNAFFECTED,
    cap_off,
    glue,
    legendrian_stabilize,
    self_glue,
    stabilization_names,
    surgery_compose,
)
from obcalc.mcg import TwistWord

PREDICATES = (
    "c_nonzero",
    "c_zero",
    "tight",
    "overtwisted",
    "stein_fillable",
    "condition_R",
    "in_im_U_all_d",
    "sg_ge",
    "sg_eq",
    "c1_nontorsion",
    "binding_bound_ok",
)
WITH_ARG = ("sg_ge", "sg_eq")


class InferError(ValueError):
    pass


class UnknownSubject(InferError):
    pass


@dataclass(frozen=True, order=True)
class Fact:
    subject: str
    predicate: str
    arg: int | None = None

    def __post_init__(self):
        if self.predicate not in PREDICATES:
            raise InferError(f"unknown predicate {self.predicate!r}")
        if (self.arg is not None) != (self.predicate in WITH_ARG):
            raise InferError(f"{self.predicate} {'needs' if self.predicate in WITH_ARG else 'takes no'} argument")

    @property
    def id(self):
        if self.arg is None:
            return f"{self.predicate}({self.subject})"
        return f"{self.predicate}({self.subject}, {self.arg})"

    def sort_key(self):
        return (self.subject, self.predicate, -1 if self.arg is None else self.arg)

    def __str__(self):
        return self.id

    @classmethod
    def from_json(cls, data):
        arg = data.get("arg")
        return cls(str(data["subject"]), str(data["predicate"]), None if arg is None else int(arg))


@dataclass(frozen=True)
class Derivation:
    rule: str | None  # None for asserted facts
    premises: tuple = ()
    step: int | None = None
    note: str = ""

    @property
    def asserted(self):
        return self.rule is None

    def key(self):
        return (
            self.rule or "",
            tuple(p.sort_key() for p in self.premises),
            -1 if self.step is None else self.step,
            self.note,
        )


ASSERTED = Derivation(None)


@dataclass(frozen=True)
class Link:
    """A map of contact classes F(c(source)) = c(target), or another step relation."""

    kind: str  # cap | twist | stab | compose | glue | self_glue | stein_cap
    step: int
    inputs: tuple
    output: str


@dataclass
class Subject:
    id: str
    book: OpenBookDesc | None = None
    periodic: PeriodicData | None = None
    foliation_verdict: object = None
    step: int | None = None

    @property
    def torus_class(self):
        """Normal form for books on the once-holed torus written in a, b."""
        b = self.book
        if b is None or b.genus != 1 or b.r != 1 or not b.monodromy.curves() <= MCG_ALPHABET:
            return None
        return classify(TwistWord(b.monodromy.letters, MCG_ALPHABET))


@dataclass
class Program:
    subjects: dict = field(default_factory=dict)
    facts: list = field(default_factory=list)
    links: list = field(default_factory=list)
    steps: list = field(default_factory=list)

    def subject(self, sid):
        try:
            return self.subjects[sid]
        except KeyError:
            raise UnknownSubject(f"unknown subject {sid!r}") from None

    def book(self, sid):
        b = self.subject(sid).book
        if b is None:
            raise InferError(f"subject {sid!r} has no open book")
        return b

    def add(self, sid, book=None, step=None):
        if sid in self.subjects:
            raise InferError(f"subject {sid!r} defined twice")
        self.subjects[sid] = Subject(sid, book, step=step)
        return self.subjects[sid]


def torus_book(word):
    alphabet = [CurveInfo("a", "nonseparating"), CurveInfo("b", "nonseparating")]
    return OpenBookDesc(SurfaceSig(1, ("B",)), word, alphabet)


def _boundary_twist_curve(ob, label):
    for cid, info in sorted(ob.alphabet.items()):
        if info.kind == "boundary-parallel" and info.parallel_to == label:
            return ob, cid
    cid = f"delta({label})"
    while cid in ob.alphabet:
        cid += "'"
    others = {b: UNAFFECTED for b in ob.surface.boundary if b != label}
    info = CurveInfo(cid, "boundary-parallel", label, others)
    return OpenBookDesc(ob.surface, ob.monodromy, {**ob.alphabet, cid: info}), cid


def load_program(script):
    """Build subjects and links from a script (dict or JSON text)."""
    if isinstance(script, str):
        script = json.loads(script)
    prog = Program()
    for sid, data in script.get("books", {}).items():
        prog.add(str(sid), OpenBookDesc.from_json(data))
    for i, step in enumerate(script.get("steps", [])):
        _apply_step(prog, i, step)
        prog.steps.append(step)
    for f in script.get("facts", []):
        fact = Fact.from_json(f)
        prog.subject(fact.subject)
        prog.facts.append(fact)
    return prog


def _apply_step(prog, i, step):
    op = step.get("op")
    out = step.get("as")
    if op == "cap":
        src = step["from"]
        capped = cap_off(prog.book(src), step["label"])
        out = out or f"{src}/{step['label']}"
        prog.add(out, capped, i)
        # the capping map runs from the capped book to the uncapped one
        prog.links.append(Link("cap", i, (out,), src))
        if step.get("stein"):
            ob, gamma = _boundary_twist_curve(prog.book(src), step["label"])
            twisted = step.get("twisted_as") or f"{src}.t({gamma})^-1"
            prog.add(twisted, surgery_compose(ob, gamma, 1), i)
            prog.links.append(Link("stein_cap", i, (src, out), twisted))
    elif op == "twist":
        src = step["from"]
        out = out or f"{src}.t({step['curve']})^-1"
        prog.add(out, surgery_compose(prog.book(src), step["curve"], 1), i)
        prog.links.append(Link("twist", i, (src,), out))
    elif op == "compose":
        left, right = prog.book(step["left"]), prog.book(step["right"])
        if left.surface != right.surface:
            raise InferError("composition needs books on the same page")
        word = TwistWord(left.monodromy.letters + right.monodromy.letters)
        out = out or f"{step['left']}*{step['right']}"
        prog.add(out, OpenBookDesc(left.surface, word, {**left.alphabet, **right.alphabet}), i)
        prog.links.append(Link("compose", i, (step["left"], step["right"]), out))
    elif op == "glue":
        pairs = [tuple(p) for p in step["pairs"]]
        ob = glue(prog.book(step["left"]), prog.book(step["right"]), pairs, step.get("allow_closed", False))
        out = out or f"{step['left']}+{step['right']}"
        prog.add(out, ob, i)
        prog.links.append(Link("glue", i, (step["left"], step["right"]), out))
    elif op == "self_glue":
        ob = self_glue(prog.book(step["from"]), tuple(step["pair"]), step.get("allow_closed", False))
        out = out or f"{step['from']}~"
        prog.add(out, ob, i)
        prog.links.append(Link("self_glue", i, (step["from"],), out))
    elif op == "stabilize_surgery":
        src, curve = step["from"], step["curve"]
        sign, stab = int(step.get("sign", 1)), step.get("stab", "+")
        stab = 1 if stab in ("+", 1, "1", "+1") else -1
        ob = prog.book(src)
        kp, _, _ = stabilization_names(ob, curve, stab)
        k_id = step.get("surgered_as") or f"{src}({curve})_{sign:+d}"
        kp_id = step.get("stabilized_as") or f"{src}({kp})_{sign:+d}"
        prog.add(k_id, surgery_compose(ob, curve, sign), i)
        prog.add(kp_id, surgery_compose(legendrian_stabilize(ob, curve, stab), kp, sign), i)
        prog.links.append(Link("stab", i, (k_id,), kp_id))
    elif op == "family":
        n, d = tuple(step["n"]), int(step["d"])
        out = out or f"xi{list(n)},{d}"
        prog.add(out, torus_book(normal_form_word(n, d)), i)
    elif op == "periodic":
        sub = prog.subject(step["subject"])
        g = int(step.get("g", sub.book.genus if sub.book else 1))
        pd, _ = PeriodicData.from_unsorted(g, int(step["m"]), [int(x) for x in step["k"]])
        sub.periodic = pd
    elif op == "foliation":
        sub = prog.subject(step["subject"])
        fd = foliations.FoliationData.from_json(step["data"])
        sub.foliation_verdict = foliations.u_image_report(fd)
    else:
        raise InferError(f"step {i}: unknown operation {op!r}")


def auto_periodic(sub):
    """Periodic data for torus books classified periodic (m = 12, k = exponent sum)."""
    if sub.periodic is not None:
        return sub.periodic
    nf = sub.torus_class
    if isinstance(nf, Periodic):
        k = nf.fdtc * 12
        assert k.denominator == 1
        return PeriodicData(1, 1, 12, (int(k),))
    return None


def family_key(sub):
    nf = sub.torus_class
    if isinstance(nf, PseudoAnosov):
        return ("pa", nf.d, nf.n)
    if isinstance(nf, Periodic):
        return ("periodic", Fraction(nf.fdtc))
    return None
