"""Text documents for grading parameters, algebra dumps and form matrices.

Documents are YAML mappings with a fixed key order.  Group elements are
written as ``"(1,0)"`` and elements of G# as ``"(1,0|1)"``; scalars use the
literal syntax of :mod:`supergrading.cyclo`.  Emitting is canonical, so
parse followed by emit reproduces any emitted document byte for byte.
"""

from __future__ import annotations

import re

import yaml

from .abelian import Bicharacter, FinAbGroup, FiniteSubgroup, GroupError, GSharpElement, parse_group
from .classify import FAMILIES, GradingParams, MEven, MexEven, MexOdd, MOdd, MStar, QexPlus, Qgr, TypeIPair
from .cyclo import format_scalar, parse_scalar
from .division import DivisionError
from .forms import AdmissibilityError, PhiMatrix, SuperinvolutionRep
from .graded_matrix import KappaMap
from .superalgebra import GradedAlgebra

__all__ = [
    "FORMAT_VERSION",
    "ParseError",
    "ValidationError",
    "parse_params",
    "validate_params",
    "emit_params",
    "params_to_dict",
    "params_from_dict",
    "emit_algebra",
    "parse_algebra",
    "emit_form",
    "parse_form",
    "emit_result",
    "document_kind",
]

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed document; ``location`` is a line/column or a field path."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ValidationError(ValueError):
    """Well-formed parameters that violate a structural or admissibility condition."""

    def __init__(self, message: str, condition: str = "parameters"):
        self.condition = condition
        super().__init__(message)


# -- low-level encoders ------------------------------------------------------------

_ELEM = re.compile(r"\(\s*([-\d\s,]*?)\s*(?:\|\s*([01])\s*)?\)")


def _fmt_elem(x) -> str:
    return str(x)


def _parse_coords(text: str, G: FinAbGroup, where: str, sharp: bool):
    if not isinstance(text, str):
        raise ParseError(f"expected an element like '(0,1)', got {text!r}", where)
    m = _ELEM.fullmatch(text.strip())
    if not m:
        raise ParseError(f"bad element {text!r}", where)
    body, par = m.group(1), m.group(2)
    coords = [int(c) for c in body.split(",") if c.strip()] if body.strip() else []
    if len(coords) != G.rank:
        raise ParseError(f"element {text!r} has {len(coords)} coordinates, group has rank {G.rank}", where)
    if sharp != (par is not None):
        raise ParseError(f"element {text!r} must {'' if sharp else 'not '}carry a parity", where)
    g = G.element(*coords)
    return GSharpElement(g, int(par)) if sharp else g


def _elem(text, G, where):
    return _parse_coords(text, G, where, False)


def _selem(text, G, where):
    return _parse_coords(text, G, where, True)


def _require(doc: dict, keys: list[str], optional: tuple = (), where: str = "") -> None:
    if not isinstance(doc, dict):
        raise ParseError("expected a mapping", where or None)
    unknown = [k for k in doc if k not in keys and k not in optional]
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}", f"{where}.{unknown[0]}" if where else str(unknown[0]))
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ParseError(f"missing field {missing[0]!r}", f"{where}.{missing[0]}" if where else missing[0])


def _list(v, where: str) -> list:
    if not isinstance(v, list):
        raise ParseError("expected a list", where)
    return v


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer, got {v!r}", where)
    return v


def _scalar(v, where: str):
    try:
        return parse_scalar(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), where) from None


def _load(text: str) -> dict:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        loc = f"line {mark.line + 1}, column {mark.column + 1}" if mark is not None else None
        problem = getattr(exc, "problem", None) or str(exc)
        raise ParseError(f"syntax error: {problem}", loc) from None
    if not isinstance(doc, dict):
        raise ParseError("a document must be a mapping")
    return doc


class _Flow(list):
    """A list written on one line, however deeply nested."""


class _Dumper(yaml.SafeDumper):
    pass


_Dumper.add_representer(_Flow, lambda d, v: d.represent_sequence("tag:yaml.org,2002:seq", v, flow_style=True))


def _dump(doc: dict) -> str:
    # the top level is always a block mapping, even when all values are scalars
    text = yaml.dump(doc, Dumper=_Dumper, sort_keys=False, default_flow_style=None, allow_unicode=True, width=100)
    if text.startswith("{"):
        text = yaml.dump(doc, Dumper=_Dumper, sort_keys=False, default_flow_style=False, allow_unicode=True,
                         width=100)
    return text


def _header(doc: dict, kind: str | None) -> FinAbGroup:
    if doc.get("format") != FORMAT_VERSION:
        raise ParseError(f"unsupported format {doc.get('format')!r}; expected {FORMAT_VERSION}", "format")
    if kind is not None and doc.get("kind", "params") != kind:
        raise ParseError(f"expected a {kind} document, got {doc.get('kind', 'params')!r}", "kind")
    try:
        return parse_group(doc.get("group"))
    except GroupError as exc:
        raise ParseError(str(exc), "group") from None


def document_kind(text: str) -> str:
    """'params', 'algebra' or 'form'."""
    doc = _load(text)
    kind = doc.get("kind", "params")
    if kind not in ("params", "algebra", "form"):
        raise ParseError(f"unknown document kind {kind!r}", "kind")
    return kind


# -- parameter documents -----------------------------------------------------------


def _enc_subgroup(T: FiniteSubgroup) -> tuple[list, list]:
    gens = T.invariant_basis()
    return gens, [_fmt_elem(x) for x in gens]


def _enc_beta(beta: Bicharacter, gens: list) -> list:
    return [[format_scalar(beta(a, b)) for b in gens] for a in gens]


def _enc_kappa(kappa: KappaMap) -> list:
    return [[_fmt_elem(c.rep), m] for c, m in kappa.items()]


def _dec_subgroup(v, parent, sharp: bool, where: str) -> tuple[FiniteSubgroup, list]:
    G = parent.base if sharp else parent
    gens = [(_selem if sharp else _elem)(x, G, f"{where}[{i}]") for i, x in enumerate(_list(v, where))]
    try:
        return FiniteSubgroup(parent, gens), gens
    except GroupError as exc:
        raise ParseError(str(exc), where) from None


def _dec_beta(v, T: FiniteSubgroup, gens: list, where: str) -> Bicharacter:
    rows = _list(v, where)
    if len(rows) != len(gens) or any(not isinstance(r, list) or len(r) != len(gens) for r in rows):
        raise ParseError(f"bicharacter table must be {len(gens)} x {len(gens)}", where)
    vals = [[_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    try:
        return Bicharacter.from_generator_values(T, gens, vals)
    except GroupError as exc:
        raise ParseError(str(exc), where) from None


def _dec_kappa(v, H: FiniteSubgroup, G: FinAbGroup, where: str) -> KappaMap:
    entries = []
    for i, item in enumerate(_list(v, where)):
        w = f"{where}[{i}]"
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError("kappa entries are [coset representative, multiplicity]", w)
        m = _int(item[1], w)
        if m < 0:
            raise ParseError("multiplicities must be non-negative", w)
        entries.append((_elem(item[0], G, w), m))
    return KappaMap(H, entries)


_FIELDS = {
    "m-even": ["T", "beta", "kappa0", "kappa1"],
    "m-odd": ["T", "beta", "kappa"],
    "q": ["T", "beta", "h", "kappa"],
    "m-star": ["T", "beta", "kappa0", "kappa1", "g0"],
    "mex-even": ["T", "beta", "kappa0", "kappa1", "g0"],
    "mex-odd": ["T", "beta", "t_p", "kappa", "g0"],
    "qex": ["T", "beta", "h", "kappa", "g0"],
    "type-i": ["inner"],
}


def params_to_dict(p: GradingParams, header: bool = True) -> dict:
    """Canonical mapping for a parameter record (the inverse of params_from_dict)."""
    doc: dict = {}
    if header:
        doc["format"] = FORMAT_VERSION
        doc["group"] = str(p.group)
    doc["family"] = p.family
    if isinstance(p, TypeIPair):
        doc["inner"] = params_to_dict(p.inner, header=False)
        return doc
    T = p.Tplus if isinstance(p, (Qgr, QexPlus)) else p.T
    beta = {MOdd: "beta_tilde", MexOdd: "beta_tilde", Qgr: "beta_plus", QexPlus: "beta_plus"}.get(type(p), "beta")
    gens, enc = _enc_subgroup(T)
    doc["T"] = enc
    doc["beta"] = _enc_beta(getattr(p, beta), gens)
    if isinstance(p, (MEven, MStar, MexEven)):
        doc["kappa0"] = _enc_kappa(p.kappa0)
        doc["kappa1"] = _enc_kappa(p.kappa1)
    if isinstance(p, MexOdd):
        doc["t_p"] = _fmt_elem(p.t_p)
    if isinstance(p, (Qgr, QexPlus)):
        doc["h"] = _fmt_elem(p.h)
    if isinstance(p, (MOdd, Qgr, MexOdd, QexPlus)):
        doc["kappa"] = _enc_kappa(p.kappa)
    if isinstance(p, (MStar, MexEven, MexOdd, QexPlus)):
        doc["g0"] = _fmt_elem(p.g0)
    return doc


def params_from_dict(doc: dict, G: FinAbGroup, where: str = "") -> GradingParams:
    """Build (without validating) the record described by a mapping."""
    pre = f"{where}." if where else ""
    fam = doc.get("family") if isinstance(doc, dict) else None
    if fam not in FAMILIES:
        raise ParseError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}", pre + "family")
    fields = _FIELDS[fam]
    allowed = ["family"] + fields
    _require(doc, allowed, ("format", "group") if not where else (), where)
    if fam == "type-i":
        return TypeIPair(params_from_dict(doc["inner"], G, pre + "inner"))
    sharp_T = fam in ("m-odd", "mex-odd")
    T, gens = _dec_subgroup(doc["T"], G.sharp if sharp_T else G, sharp_T, pre + "T")
    beta = _dec_beta(doc["beta"], T, gens, pre + "beta")
    Tplus = T.even_part().project_to_base() if sharp_T else T

    def kap(name, H=Tplus):
        return _dec_kappa(doc[name], H, G, pre + name)

    if fam == "m-even":
        return MEven(T, beta, kap("kappa0"), kap("kappa1"))
    if fam == "m-odd":
        return MOdd(T, beta, kap("kappa"))
    if fam == "q":
        return Qgr(T, beta, _elem(doc["h"], G, pre + "h"), kap("kappa"))
    if fam == "m-star":
        return MStar(T, beta, kap("kappa0"), kap("kappa1"), _selem(doc["g0"], G, pre + "g0"))
    if fam == "mex-even":
        return MexEven(T, beta, kap("kappa0"), kap("kappa1"), _selem(doc["g0"], G, pre + "g0"))
    if fam == "mex-odd":
        return MexOdd(T, beta, _selem(doc["t_p"], G, pre + "t_p"), kap("kappa"), _elem(doc["g0"], G, pre + "g0"))
    return QexPlus(T, beta, _elem(doc["h"], G, pre + "h"), kap("kappa"), _elem(doc["g0"], G, pre + "g0"))


def validate_params(p: GradingParams) -> None:
    """Run the record's checks, converting failures to ValidationError."""
    try:
        p.validate()
    except AdmissibilityError as exc:
        raise ValidationError(str(exc), exc.condition) from None
    except DivisionError as exc:
        raise ValidationError(str(exc), "division") from None
    except (ValueError, TypeError) as exc:
        raise ValidationError(str(exc)) from None


def parse_params(text: str, validate: bool = True) -> GradingParams:
    doc = _load(text)
    G = _header(doc, "params")
    if "kind" in doc:
        raise ParseError("parameter documents carry no 'kind' field", "kind")
    p = params_from_dict(doc, G)
    if validate:
        validate_params(p)
    return p


def emit_params(p: GradingParams) -> str:
    return _dump(params_to_dict(p))


# -- algebra dumps -----------------------------------------------------------------


def _enc_vec(v: dict) -> list:
    return [[k, format_scalar(c)] for k, c in sorted(v.items())]


def _dec_vec(v, n: int, where: str) -> dict:
    out = {}
    for i, item in enumerate(_list(v, where)):
        w = f"{where}[{i}]"
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError("vector entries are [index, scalar]", w)
        k = _int(item[0], w)
        if not 0 <= k < n:
            raise ParseError(f"index {k} out of range", w)
        out[k] = _scalar(item[1], w)
    return out


def _simple_meta(meta: dict) -> dict:
    out = {}
    for k in sorted(meta):
        v = meta[k]
        if isinstance(v, (str, int, bool)) or (isinstance(v, list) and all(isinstance(x, int) for x in v)):
            out[k] = v
    return out


def emit_algebra(A: GradedAlgebra, involution: SuperinvolutionRep | None = None) -> str:
    doc = {
        "format": FORMAT_VERSION,
        "kind": "algebra",
        "group": str(A.group),
        "lie": A.kind == "lie",
        "meta": _simple_meta(A.meta),
        "basis": [[lab, _fmt_elem(d), d.parity] for lab, d in zip(A.labels, A.degrees)],
        "struct": [_Flow([i, j, _enc_vec(row)]) for (i, j), row in sorted(A.struct.items())],
    }
    if A.unit is not None:
        doc["unit"] = _Flow(_enc_vec(A.unit))
    if involution is not None:
        doc["involution"] = [_Flow(_enc_vec(img)) for img in involution.images]
    return _dump(doc)


def parse_algebra(text: str) -> tuple[GradedAlgebra, SuperinvolutionRep | None]:
    doc = _load(text)
    G = _header(doc, "algebra")
    _require(doc, ["format", "kind", "group", "lie", "meta", "basis", "struct"], ("unit", "involution"))
    if not isinstance(doc["lie"], bool):
        raise ParseError("expected true or false", "lie")
    meta = doc["meta"] if isinstance(doc["meta"], dict) else None
    if meta is None:
        raise ParseError("expected a mapping", "meta")
    labels, degrees = [], []
    for i, item in enumerate(_list(doc["basis"], "basis")):
        w = f"basis[{i}]"
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError("basis entries are [label, degree, parity]", w)
        d = _selem(item[1], G, w)
        if _int(item[2], w) != d.parity:
            raise ParseError("parity does not match the degree", w)
        labels.append(str(item[0]))
        degrees.append(d)
    n = len(labels)
    struct = {}
    for i, item in enumerate(_list(doc["struct"], "struct")):
        w = f"struct[{i}]"
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError("structure entries are [i, j, vector]", w)
        a, b = _int(item[0], w), _int(item[1], w)
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError("basis index out of range", w)
        struct[(a, b)] = _dec_vec(item[2], n, w)
    unit = _dec_vec(doc["unit"], n, "unit") if doc.get("unit") is not None else None
    A = GradedAlgebra(G, labels, degrees, struct, unit, "lie" if doc["lie"] else "assoc", meta)
    phi = None
    if doc.get("involution") is not None:
        imgs = [_dec_vec(v, n, f"involution[{i}]") for i, v in enumerate(_list(doc["involution"], "involution"))]
        if len(imgs) != n:
            raise ParseError("one image per basis vector is required", "involution")
        phi = SuperinvolutionRep(A, imgs, "dump")
    return A, phi


# -- form matrices -------------------------------------------------------------------


def emit_form(Phi: PhiMatrix) -> str:
    doc = {
        "format": FORMAT_VERSION,
        "kind": "form",
        "group": str(Phi.D.group),
        "g0": _fmt_elem(Phi.g0),
        "delta": Phi.delta,
        "gamma": [_fmt_elem(g) for g in Phi.gamma],
        "entries": [[i, j, _fmt_elem(t), format_scalar(c)] for (i, j), (t, c) in sorted(Phi.entries.items())],
    }
    return _dump(doc)


def parse_form(text: str, D) -> PhiMatrix:
    """Form document over the graded-division algebra D."""
    doc = _load(text)
    G = _header(doc, "form")
    if G != D.group:
        raise ParseError(f"form is over {G}, the algebra over {D.group}", "group")
    _require(doc, ["format", "kind", "group", "g0", "delta", "gamma", "entries"])
    g0 = _selem(doc["g0"], G, "g0")
    delta = doc["delta"]
    if delta not in (1, -1, None):
        raise ParseError("delta is 1, -1 or null", "delta")
    gamma = [_selem(x, G, f"gamma[{i}]") for i, x in enumerate(_list(doc["gamma"], "gamma"))]
    k = len(gamma)
    entries = {}
    for n, item in enumerate(_list(doc["entries"], "entries")):
        w = f"entries[{n}]"
        if not isinstance(item, list) or len(item) != 4:
            raise ParseError("form entries are [i, j, degree, scalar]", w)
        i, j = _int(item[0], w), _int(item[1], w)
        if not (0 <= i < k and 0 <= j < k):
            raise ParseError("row index out of range", w)
        t = _selem(item[2], G, w)
        if t not in D.T:
            raise ParseError(f"degree {t} is outside the support of D", w)
        entries[(i, j)] = (t, _scalar(item[3], w))
    return PhiMatrix(D, gamma, entries, g0, delta)


def emit_result(record: dict) -> str:
    """Plain YAML for small result records (iso decisions, census listings, reports)."""
    return _dump(record)
