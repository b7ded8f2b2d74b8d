"""Open-book descriptors and the operations that change the page.

Curve geometry is not computed.  Each curve declares what happens to it when a
given boundary component is capped; a capping step that needs an undeclared
behaviour is an error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from obcalc.mcg import TwistWord, parse_word


class OpenBookError(ValueError):
    pass


class InsufficientCurveMetadata(OpenBookError):
    pass


@dataclass(frozen=True)
class SurfaceSig:
    genus: int
    boundary: tuple = ()

    def __post_init__(self):
        boundary = tuple(str(b) for b in self.boundary)
        object.__setattr__(self, "boundary", boundary)
        if self.genus < 0:
            raise OpenBookError(f"negative genus {self.genus}")
        if len(set(boundary)) != len(boundary):
            raise OpenBookError(f"repeated boundary labels in {boundary}")

    @property
    def r(self):
        return len(self.boundary)

    @property
    def euler_characteristic(self):
        return 2 - 2 * self.genus - self.r

    def __str__(self):
        return f"S_{{{self.genus},{self.r}}}"


# --- cap images ------------------------------------------------------------

NULL = "null-homotopic"
UNAFFECTED = "unaffected"


@dataclass(frozen=True)
class Becomes:
    curve: str

    def __str__(self):
        return f"becomes {self.curve}"


def _cap_image_from_json(value):
    if isinstance(value, dict):
        return Becomes(str(value["becomes"]))
    if value in (NULL, "null"):
        return NULL
    if value == UNAFFECTED:
        return UNAFFECTED
    if isinstance(value, str) and value.startswith("becomes:"):
        return Becomes(value.split(":", 1)[1])
    raise OpenBookError(f"bad cap image {value!r}")


def _cap_image_to_json(value):
    if isinstance(value, Becomes):
        return {"becomes": value.curve}
    return value


KINDS = ("nonseparating", "boundary-parallel", "generic")


@dataclass(frozen=True)
class CurveInfo:
    """A named simple closed curve and its fate under each boundary capping.

    ``kind`` is one of ``nonseparating``, ``boundary-parallel`` (with
    ``parallel_to`` set) or ``generic``.
    """

    id: str
    kind: str = "generic"
    parallel_to: str | None = None
    cap_images: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OpenBookError(f"unknown curve kind {self.kind!r}")
        images = dict(self.cap_images)
        if self.kind == "boundary-parallel":
            if self.parallel_to is None:
                raise OpenBookError(f"boundary-parallel curve {self.id} needs parallel_to")
            declared = images.setdefault(self.parallel_to, NULL)
            if declared != NULL:
                raise OpenBookError(
                    f"{self.id} is parallel to {self.parallel_to} but declares {declared}"
                )
        object.__setattr__(self, "cap_images", images)

    def to_json(self):
        out = {"id": self.id, "kind": self.kind}
        if self.parallel_to is not None:
            out["parallel_to"] = self.parallel_to
        out["cap_images"] = {k: _cap_image_to_json(v) for k, v in sorted(self.cap_images.items())}
        return out

    @classmethod
    def from_json(cls, data):
        kind = data.get("kind", "generic")
        parallel_to = data.get("parallel_to")
        if kind.startswith("boundary-parallel:"):
            kind, parallel_to = "boundary-parallel", kind.split(":", 1)[1]
        images = {k: _cap_image_from_json(v) for k, v in data.get("cap_images", {}).items()}
        return cls(str(data["id"]), kind, parallel_to, images)


@dataclass(frozen=True)
class OpenBookDesc:
    surface: SurfaceSig
    monodromy: TwistWord = TwistWord()
    alphabet: dict = field(default_factory=dict)

    def __post_init__(self):
        alphabet = self.alphabet
        if not isinstance(alphabet, dict):
            alphabet = {c.id: c for c in alphabet}
        object.__setattr__(self, "alphabet", dict(alphabet))
        missing = self.monodromy.curves() - set(self.alphabet)
        if missing:
            raise OpenBookError(f"monodromy uses undeclared curves {sorted(missing)}")

    @property
    def genus(self):
        return self.surface.genus

    @property
    def r(self):
        return self.surface.r

    def __str__(self):
        return f"({self.surface}, {self.monodromy})"

    # -- serialization
    def to_json(self):
        return {
            "genus": self.surface.genus,
            "boundary": list(self.surface.boundary),
            "monodromy": str(self.monodromy),
            "alphabet": [self.alphabet[k].to_json() for k in sorted(self.alphabet)],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        alphabet = [CurveInfo.from_json(c) for c in data.get("alphabet", [])]
        return cls(
            SurfaceSig(int(data["genus"]), tuple(data.get("boundary", ()))),
            parse_word(data.get("monodromy", "")),
            alphabet,
        )


# --- capping ---------------------------------------------------------------


def _resolve(alphabet, curve, label, used):
    info = alphabet[curve]
    image = info.cap_images.get(label)
    if image is None:
        if used:
            raise InsufficientCurveMetadata(
                f"curve {curve!r} has no declared behaviour when capping {label!r}"
            )
        return None
    return image


def cap_off(ob, label):
    """Fill boundary ``label`` with a disk and extend the monodromy by the identity."""
    if label not in ob.surface.boundary:
        raise OpenBookError(f"no boundary component {label!r} on {ob.surface}")
    used = ob.monodromy.curves()
    subst = {}
    alphabet = {}
    for cid, info in ob.alphabet.items():
        image = _resolve(ob.alphabet, cid, label, cid in used)
        if image is None or image == NULL:
            subst[cid] = None
            continue
        if isinstance(image, Becomes):
            subst[cid] = image.curve
            continue
        images = {k: v for k, v in info.cap_images.items() if k != label}
        alphabet[cid] = replace(info, cap_images=images)
    for cid, target in subst.items():
        if target is not None and target not in alphabet:
            raise InsufficientCurveMetadata(
                f"{cid!r} becomes {target!r}, which does not survive capping {label!r}"
            )
    surface = SurfaceSig(ob.genus, tuple(b for b in ob.surface.boundary if b != label))
    return OpenBookDesc(surface, ob.monodromy.substitute(subst), alphabet)


# --- gluing ----------------------------------------------------------------


def _fresh(name, taken):
    while name in taken:
        name += "'"
    return name


def _forget_labels(info, labels):
    images = {k: v for k, v in info.cap_images.items() if k not in labels}
    if info.kind == "boundary-parallel" and info.parallel_to in labels:
        return CurveInfo(info.id, "generic", None, images)
    return replace(info, cap_images=images)


def _other_side(info, labels):
    """A curve on one page is left alone when a boundary of the other page is capped."""
    return replace(info, cap_images={**{b: UNAFFECTED for b in labels}, **info.cap_images})


def glue(ob1, ob2, pairs, allow_closed=False):
    """Identify boundary ``B_i`` of ``ob1`` with ``B'_i`` of ``ob2`` for each pair.

    The glued monodromy is the concatenation over the disjoint union of the two
    alphabets (curves of ``ob2`` that clash with ``ob1`` get primed ids).
    """
    pairs = [(str(x), str(y)) for x, y in pairs]
    n = len(pairs)
    if n < 1:
        raise OpenBookError("glue needs at least one pair")
    left = [x for x, _ in pairs]
    right = [y for _, y in pairs]
    if len(set(left)) != n or len(set(right)) != n:
        raise OpenBookError("boundary label used twice in gluing pairs")
    for x in left:
        if x not in ob1.surface.boundary:
            raise OpenBookError(f"{x!r} is not a boundary of the first book")
    for y in right:
        if y not in ob2.surface.boundary:
            raise OpenBookError(f"{y!r} is not a boundary of the second book")
    r_out = ob1.r + ob2.r - 2 * n
    if r_out == 0 and not allow_closed:
        raise OpenBookError("gluing would close up the page; pass allow_closed=True")
    if ob1.r <= n and ob2.r <= n and r_out:
        raise OpenBookError(f"one of the books needs more than {n} boundary components")

    keep1 = [b for b in ob1.surface.boundary if b not in left]
    taken = set(keep1)
    relabel = {}
    for b in ob2.surface.boundary:
        if b not in right:
            relabel[b] = _fresh(b, taken)
            taken.add(relabel[b])
    keep2 = [relabel[b] for b in ob2.surface.boundary if b not in right]

    alphabet = {
        cid: _other_side(_forget_labels(info, set(left)), keep2)
        for cid, info in ob1.alphabet.items()
    }
    rename = {}
    for cid in ob2.alphabet:
        rename[cid] = _fresh(cid, set(alphabet) | set(rename.values()))
    for cid, info in ob2.alphabet.items():
        info = _forget_labels(info, set(right))
        images = {}
        for k, v in info.cap_images.items():
            if isinstance(v, Becomes):
                v = Becomes(rename.get(v.curve, v.curve))
            images[relabel.get(k, k)] = v
        images.update({b: UNAFFECTED for b in keep1})
        parallel = relabel.get(info.parallel_to, info.parallel_to) if info.parallel_to else None
        alphabet[rename[cid]] = CurveInfo(rename[cid], info.kind, parallel, images)

    surface = SurfaceSig(ob1.genus + ob2.genus + n - 1, tuple(keep1 + keep2))
    word = TwistWord(ob1.monodromy.letters + ob2.monodromy.substitute(rename).letters)
    return OpenBookDesc(surface, word, alphabet)


def self_glue(ob, pair, allow_closed=False):
    """Glue two boundary components of the same page together."""
    x, y = (str(p) for p in pair)
    if x == y:
        raise OpenBookError("self-gluing needs two distinct boundary components")
    for b in (x, y):
        if b not in ob.surface.boundary:
            raise OpenBookError(f"no boundary component {b!r}")
    if ob.r < 3 and not (allow_closed and ob.r == 2):
        raise OpenBookError(f"self-gluing needs at least three boundary components, have {ob.r}")
    surface = SurfaceSig(ob.genus + 1, tuple(b for b in ob.surface.boundary if b not in (x, y)))
    alphabet = {cid: _forget_labels(info, {x, y}) for cid, info in ob.alphabet.items()}
    return OpenBookDesc(surface, ob.monodromy, alphabet)


def boundary_connected_sum(ob1, ob2, b1, b2):
    """Join the pages by a band between ``b1`` and ``b2``; the two boundaries merge.

    Genus adds and one boundary component is lost.  The merged component gets
    the label ``"b1#b2"``; curves keep their behaviour on untouched boundaries.
    """
    merged = f"{b1}#{b2}"
    if b1 not in ob1.surface.boundary or b2 not in ob2.surface.boundary:
        raise OpenBookError("unknown boundary label")
    keep1 = [merged if b == b1 else b for b in ob1.surface.boundary]
    taken = set(keep1)
    relabel = {}
    keep2 = []
    for b in ob2.surface.boundary:
        if b == b2:
            continue
        relabel[b] = _fresh(b, taken)
        taken.add(relabel[b])
        keep2.append(relabel[b])
    alphabet = {cid: _other_side(_forget_labels(info, {b1}), keep2) for cid, info in ob1.alphabet.items()}
    rename = {}
    for cid in ob2.alphabet:
        rename[cid] = _fresh(cid, set(alphabet) | set(rename.values()))
    for cid, info in ob2.alphabet.items():
        info = _forget_labels(info, {b2})
        images = {}
        for k, v in info.cap_images.items():
            if isinstance(v, Becomes):
                v = Becomes(rename.get(v.curve, v.curve))
            images[relabel.get(k, k)] = v
        images.update({b: UNAFFECTED for b in keep1 if b != merged})
        parallel = relabel.get(info.parallel_to, info.parallel_to) if info.parallel_to else None
        alphabet[rename[cid]] = CurveInfo(rename[cid], info.kind, parallel, images)
    surface = SurfaceSig(ob1.genus + ob2.genus, tuple(keep1 + keep2))
    word = TwistWord(ob1.monodromy.letters + ob2.monodromy.substitute(rename).letters)
    return OpenBookDesc(surface, word, alphabet)


# --- surgery and stabilization --------------------------------------------


def surgery_compose(ob, curve, sign):
    """Contact (+1)-surgery appends t_K^-1, contact (-1)-surgery appends t_K."""
    if curve not in ob.alphabet:
        raise OpenBookError(f"unknown curve {curve!r}")
    if sign not in (1, -1):
        raise OpenBookError(f"surgery sign must be +1 or -1, got {sign}")
    word = TwistWord(ob.monodromy.letters + ((curve, -sign),))
    return replace(ob, monodromy=word)


def stabilization_names(ob, curve, sign):
    """Ids ``(K', B+, B-)`` that :func:`legendrian_stabilize` will create."""
    names = _stabilization_names(ob, curve, sign)
    return names["kp"], names["bp"], names["bm"]


def _stabilization_names(ob, curve, sign):
    s = "+" if sign > 0 else "-"
    taken_b = set(ob.surface.boundary)
    bp = _fresh(f"B+({curve})", taken_b)
    bm = _fresh(f"B-({curve})", taken_b | {bp})
    taken = set(ob.alphabet)
    names = {"bp": bp, "bm": bm}
    for key, base in (("kp", f"S{s}({curve})"), ("k_p", f"S{s}({curve}).p"),
                      ("k_m", f"S{s}({curve}).m"), ("xp", f"x+({curve})"), ("xm", f"x-({curve})")):
        names[key] = _fresh(base, taken)
        taken.add(names[key])
    return names


def legendrian_stabilize(ob, curve, sign):
    """Stabilize the page twice so the Legendrian push-off S_+-(K) sits on it.

    Two boundary components B+(K) and B-(K) appear, genus is unchanged, and
    the monodromy gains two positive twists along fresh curves that die when
    their boundary is capped.  The new curve K' = S_+-(K) declares cap
    behaviour chaining back to K, so capping both new boundaries in either
    order returns the original page with K' identified with K.

    The twist curves are opaque: only their capping behaviour is recorded.
    Use :func:`stabilization_names` to learn the ids of K', B+ and B-.
    """
    if curve not in ob.alphabet:
        raise OpenBookError(f"unknown curve {curve!r}")
    if sign not in (1, -1):
        raise OpenBookError(f"stabilization sign must be +1 or -1, got {sign}")
    nm = _stabilization_names(ob, curve, sign)
    bp, bm = nm["bp"], nm["bm"]

    alphabet = {
        cid: replace(info, cap_images={**info.cap_images, bp: UNAFFECTED, bm: UNAFFECTED})
        for cid, info in ob.alphabet.items()
    }
    base = dict(ob.alphabet[curve].cap_images)
    old = {b: UNAFFECTED for b in ob.surface.boundary}
    alphabet[nm["kp"]] = CurveInfo(
        nm["kp"], "generic", None, {**base, bp: Becomes(nm["k_p"]), bm: Becomes(nm["k_m"])}
    )
    alphabet[nm["k_p"]] = CurveInfo(
        nm["k_p"], "generic", None, {**base, bp: UNAFFECTED, bm: Becomes(curve)}
    )
    alphabet[nm["k_m"]] = CurveInfo(
        nm["k_m"], "generic", None, {**base, bm: UNAFFECTED, bp: Becomes(curve)}
    )
    alphabet[nm["xp"]] = CurveInfo(nm["xp"], "boundary-parallel", bp, {**old, bm: UNAFFECTED})
    alphabet[nm["xm"]] = CurveInfo(nm["xm"], "boundary-parallel", bm, {**old, bp: UNAFFECTED})

    surface = SurfaceSig(ob.genus, ob.surface.boundary + (bp, bm))
    word = TwistWord(ob.monodromy.letters + ((nm["xp"], 1), (nm["xm"], 1)))
    return OpenBookDesc(surface, word, alphabet)


# --- named examples --------------------------------------------------------


def example_s12():
    """S_{1,2} with curves a, b, c, gamma; boundary B is the one that gets capped.

    Capping B kills c and turns gamma into b; capping the other boundary
    ``B0`` is left undeclared except for the boundary-parallel curve.
    """
    curves = [
        CurveInfo("a", "nonseparating", None, {"B": UNAFFECTED}),
        CurveInfo("b", "nonseparating", None, {"B": UNAFFECTED}),
        CurveInfo("c", "boundary-parallel", "B"),
        CurveInfo("gamma", "nonseparating", None, {"B": Becomes("b")}),
    ]
    word = parse_word("a b a b a b a b a b gamma^2 c^2")
    return OpenBookDesc(SurfaceSig(1, ("B", "B0")), word, curves)
