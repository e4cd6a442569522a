"""Contact surgery coefficients, linking matrices and H1 of surgered
manifolds."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import intlinalg as la
from .front import FrontDiagram, linking_number, linking_table, reeb_pushoff, tb, tb_all


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True)
class SurgeryCoefficient:
    contact: Fraction

    def __post_init__(self):
        c = Fraction(self.contact)
        object.__setattr__(self, "contact", c)
        if c == 0 or c.numerator not in (1, -1):
            raise SurgeryError(f"contact coefficient {c} is not of the form 1/k")

    @classmethod
    def parse(cls, text):
        t = str(text).strip().replace("+", "")
        num, _, den = t.partition("/")
        try:
            return cls(Fraction(int(num), int(den)) if den else Fraction(t))
        except (ValueError, ZeroDivisionError):
            raise SurgeryError(f"bad surgery coefficient {text!r}") from None

    @property
    def k(self):
        return int(1 / self.contact)

    def smooth(self, tb_value):
        return tb_value + self.contact

    def __str__(self):
        c = self.contact
        if c.denominator == 1:
            return "%+d" % c.numerator
        return f"1/{self.k}"


@dataclass
class SurgeryDiagram:
    """A front with one contact coefficient per component, plus free-form
    annotations (meridians, plumbing records) used by the move engine."""
    front: FrontDiagram
    coefficients: tuple
    annotations: dict = field(default_factory=dict)
    provenance: object = None     # an OpenBook when the diagram came from one

    def __post_init__(self):
        cs = tuple(c if isinstance(c, SurgeryCoefficient) else SurgeryCoefficient(c)
                   for c in self.coefficients)
        if len(cs) != self.front.ncomponents:
            raise SurgeryError(f"{len(cs)} coefficients for {self.front.ncomponents} components")
        self.coefficients = cs

    @property
    def ncomponents(self):
        return self.front.ncomponents

    def is_integral(self):
        return all(abs(c.contact) == 1 for c in self.coefficients)


def expand_rational(d: SurgeryDiagram) -> SurgeryDiagram:
    """Replace each 1/k component by |k| Reeb pushoffs with coefficient sgn(k)."""
    if d.is_integral():
        return d
    front = d.front
    coefs = list(d.coefficients)
    for c in reversed(range(front.ncomponents)):
        k = coefs[c].k
        if abs(k) > 1:
            for _ in range(abs(k) - 1):
                front = reeb_pushoff(front, c)
            one = SurgeryCoefficient(1 if k > 0 else -1)
            coefs[c:c + 1] = [one] * abs(k)
    labels = list(front.labels)
    seen = {}
    for i, lab in enumerate(labels):
        # pushoffs come out as label'; number the copies instead
        base = lab.rstrip("'")
        if base != lab:
            seen[base] = seen.get(base, 0) + 1
            labels[i] = f"{base}.{seen[base]}"
    return SurgeryDiagram(front.with_labels(labels), tuple(coefs), dict(d.annotations),
                          d.provenance)


def linking_matrix_front(d: FrontDiagram, coefficients):
    n = d.ncomponents
    if len(coefficients) != n:
        raise SurgeryError(f"{len(coefficients)} coefficients for {n} components")
    M = linking_table(d)
    tbs = tb_all(d)
    for i in range(n):
        c = Fraction(coefficients[i])
        if abs(c) != 1:
            raise SurgeryError("rational coefficients present; expand them first")
        M[i][i] = tbs[i] + int(c)
    return M


def linking_matrix(d: SurgeryDiagram):
    return linking_matrix_front(d.front, [c.contact for c in d.coefficients])


@dataclass(frozen=True)
class Homology:
    torsion: tuple
    free: int

    def __str__(self):
        return la.group_name(list(self.torsion), self.free)

    @property
    def divisors(self):
        return list(self.torsion) + [0] * self.free

    def is_trivial(self):
        return not self.torsion and not self.free


def h1_from_surgery(m) -> Homology:
    n = len(m)
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise SurgeryError("linking matrix is not symmetric")
    t, f = la.cokernel(m, n)
    return Homology(tuple(t), f)


def h1_of(d: SurgeryDiagram) -> Homology:
    return h1_from_surgery(linking_matrix(expand_rational(d)))


def h1_rational(d: SurgeryDiagram) -> Homology:
    """H1 straight from rational framings p/q: the standard presentation
    with relations p_i mu_i + q_i sum_j lk_ij mu_j; an independent route to
    the expanded computation."""
    n = d.ncomponents
    f = d.front
    M = la.zeros(n, n)
    for i in range(n):
        r = d.coefficients[i].smooth(tb(f, i))
        p, q = r.numerator, r.denominator
        M[i][i] = p
        for j in range(n):
            if j != i:
                M[i][j] = q * linking_number(f, i, j)
    t, fr = la.cokernel(la.transpose(M), n)
    return Homology(tuple(t), fr)


@dataclass
class Report:
    h1_a: Homology
    h1_b: Homology
    summary_a: str
    summary_b: str
    variation: object = None    # (a, b) pair or None

    @property
    def h1_equal(self):
        return self.h1_a == self.h1_b

    @property
    def variation_equal(self):
        if self.variation is None:
            return None
        return self.variation[0] == self.variation[1]

    def as_dict(self):
        out = {"h1": {"a": str(self.h1_a), "b": str(self.h1_b),
                      "a_divisors": self.h1_a.divisors, "b_divisors": self.h1_b.divisors,
                      "equal": self.h1_equal},
               "components": {"a": self.summary_a, "b": self.summary_b}}
        if self.variation is not None:
            out["variation"] = {"a": str(self.variation[0]), "b": str(self.variation[1]),
                                "equal": self.variation_equal}
        return out

    def text(self):
        lines = [f"H1(a) = {self.h1_a}", f"H1(b) = {self.h1_b}",
                 "H1 " + ("equal" if self.h1_equal else "DIFFER"),
                 f"a: {self.summary_a}", f"b: {self.summary_b}"]
        if self.variation is not None:
            lines.append(f"variation H1: {self.variation[0]} vs {self.variation[1]} "
                         + ("equal" if self.variation_equal else "DIFFER"))
        return "\n".join(lines)


def summarize(d: SurgeryDiagram) -> str:
    if d.ncomponents == 0:
        return "empty"
    plus = sum(1 for c in d.coefficients if c.contact > 0)
    return (f"{d.ncomponents} components ({plus} positive, {d.ncomponents - plus} negative): "
            + ", ".join(f"{lab}[{c}]" for lab, c in zip(d.front.labels, d.coefficients)))


def compare_presentations(a: SurgeryDiagram, b: SurgeryDiagram) -> Report:
    var = None
    if a.provenance is not None and b.provenance is not None:
        from .mcg import variation_h1
        var = tuple(Homology(tuple(t), f) for t, f in
                    (variation_h1(a.provenance), variation_h1(b.provenance)))
    return Report(h1_of(a), h1_of(b), summarize(a), summarize(b), var)


# ---------------------------------------------------------------------------
# document format

def surgery_document(d: SurgeryDiagram) -> dict:
    from .front import serialize_front
    return {"format": "surgery v1",
            "front": serialize_front(d.front),
            "coefficients": [str(c) for c in d.coefficients],
            "annotations": d.annotations}


def dump_surgery(d: SurgeryDiagram) -> str:
    import json
    return json.dumps(surgery_document(d), indent=1, sort_keys=True) + "\n"


def load_surgery(text_or_doc) -> SurgeryDiagram:
    import json
    from .front import parse_front
    doc = json.loads(text_or_doc) if isinstance(text_or_doc, str) else text_or_doc
    if not isinstance(doc, dict) or doc.get("format") != "surgery v1":
        fmt = doc.get("format") if isinstance(doc, dict) else None
        raise SurgeryError(f"unsupported surgery format {fmt!r}")
    front = parse_front(doc["front"])
    coefs = tuple(SurgeryCoefficient.parse(c) for c in doc["coefficients"])
    ann = doc.get("annotations") or {}
    labels = set(front.labels)
    for mu, k in ann.get("meridians", {}).items():
        if mu not in labels or k not in labels:
            raise SurgeryError(f"meridian annotation {mu} -> {k} names an unknown component")
    return SurgeryDiagram(front, coefs, dict(ann))
