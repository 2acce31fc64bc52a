"""Canonical JSON encoding for every artifact type, plus content digests.

Serialization is canonical (sorted keys, compact separators, terms in the
fixed monomial order) so files are diff-able and digests are stable: the
same seed always produces byte-identical output.
"""

from __future__ import annotations

import hashlib
import json

from .code import LinearCode
from .errors import ParseError
from .gf import Field, field_make
from .linalg import Mat, MonomialWitness
from .points import PointSet
from .poly import DualPoly, HomogPoly, monomial_basis, poly_from_terms

SCHEMA_VERSION = 1

KINDS = ("code", "code_pair", "pointset", "polynomial", "pi_instance", "certificate")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


# -- fields and elements --

def encode_field(F: Field) -> dict:
    return {"p": F.p, "e": F.e, "modulus": list(F.modulus)}


def decode_field(obj) -> Field:
    try:
        p, e = int(obj["p"]), int(obj["e"])
        modulus = obj.get("modulus") or None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad field object: {exc}") from exc
    return field_make(p, e, modulus if e > 1 else None)


def encode_elem(F: Field, a: int):
    if F.e == 1:
        return a
    return list(F.rep(a))


def decode_elem(F: Field, obj) -> int:
    if isinstance(obj, int):
        if F.e == 1:
            return obj % F.p
        return F.from_rep([obj] + [0] * (F.e - 1))
    if isinstance(obj, list):
        return F.from_rep([int(c) for c in obj])
    raise ParseError(f"bad element encoding {obj!r}")


# -- matrices, witnesses --

def encode_mat(M: Mat) -> dict:
    F = M.field
    return {
        "rows": M.rows,
        "cols": M.cols,
        "entries": [[encode_elem(F, x) for x in row] for row in M.data],
    }


def decode_mat(F: Field, obj) -> Mat:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix object: {exc}") from exc
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ParseError("matrix entries do not match the declared shape")
    return Mat(F, [[decode_elem(F, x) for x in row] for row in entries], cols)


def encode_witness(w: MonomialWitness) -> dict:
    F = w.field
    return {
        "A": encode_mat(w.A),
        "D": [encode_elem(F, d) for d in w.diag],
        "P": list(w.perm),
    }


def decode_witness(F: Field, obj) -> MonomialWitness:
    try:
        A = decode_mat(F, obj["A"])
        diag = [decode_elem(F, d) for d in obj["D"]]
        perm = [int(i) for i in obj["P"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad witness object: {exc}") from exc
    return MonomialWitness(A, diag, perm)


# -- polynomials --

def encode_poly(f) -> dict:
    F = f.field
    basis = monomial_basis(f.k, f.degree)
    terms = [
        [encode_elem(F, c), list(basis[i])]
        for i, c in enumerate(f.coeffs)
        if c
    ]
    return {
        "field": encode_field(F),
        "k": f.k,
        "degree": f.degree,
        "dual": isinstance(f, DualPoly),
        "terms": terms,
    }


def decode_poly(obj, F: Field | None = None):
    try:
        if F is None:
            F = decode_field(obj["field"])
        k, d, dual = int(obj["k"]), int(obj["degree"]), bool(obj["dual"])
        terms = [(tuple(int(e) for e in exps), decode_elem(F, c)) for c, exps in obj["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad polynomial object: {exc}") from exc
    return poly_from_terms(F, k, d, terms, dual=dual)


# -- codes and point sets --

def encode_code(C: LinearCode, meta: dict | None = None) -> dict:
    return {
        "field": encode_field(C.field),
        "n": C.n,
        "k": C.k,
        "G": encode_mat(C.G),
        "meta": meta or {},
    }


def decode_code(obj) -> LinearCode:
    try:
        F = decode_field(obj["field"])
        n, k = int(obj["n"]), int(obj["k"])
        G = decode_mat(F, obj["G"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad code object: {exc}") from exc
    if G.shape() != (k, n):
        raise ParseError("generator matrix shape disagrees with (k, n)")
    return LinearCode(F, n, k, G)


def encode_pair(C: LinearCode, Cp: LinearCode, witness=None) -> dict:
    out = {
        "field": encode_field(C.field),
        "n": C.n,
        "k": C.k,
        "left": {"G": encode_mat(C.G)},
        "right": {"G": encode_mat(Cp.G)},
        "witness": encode_witness(witness) if witness is not None else None,
    }
    return out


def decode_pair(obj):
    try:
        F = decode_field(obj["field"])
        n, k = int(obj["n"]), int(obj["k"])
        C = LinearCode(F, n, k, decode_mat(F, obj["left"]["G"]))
        Cp = LinearCode(F, n, k, decode_mat(F, obj["right"]["G"]))
        w = obj.get("witness")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad pair object: {exc}") from exc
    witness = decode_witness(F, w) if w else None
    return C, Cp, witness


def encode_pointset(X: PointSet) -> dict:
    F = X.field
    return {
        "field": encode_field(F),
        "k": X.k,
        "points": [[encode_elem(F, x) for x in p] for p in X.points],
        "L": encode_poly(X.L) if X.L is not None else None,
    }


def decode_pointset(obj) -> PointSet:
    try:
        F = decode_field(obj["field"])
        k = int(obj["k"])
        pts = [[decode_elem(F, x) for x in p] for p in obj["points"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad point set object: {exc}") from exc
    X = PointSet(F, k, pts)
    if obj.get("L"):
        X.set_L(decode_poly(obj["L"], F))
    return X


# -- certificates --

def encode_certificate(cert) -> dict:
    witness = None
    if isinstance(cert.witness, MonomialWitness):
        witness = {"type": "monomial", **encode_witness(cert.witness)}
    elif isinstance(cert.witness, Mat):
        witness = {"type": "matrix", "A": encode_mat(cert.witness)}
    return {
        "claim": cert.claim,
        "result": cert.result,
        "inputs": cert.inputs,
        "witness": witness,
        "transcript": cert.transcript,
        "verified": cert.verified,
    }


def decode_certificate(obj, F: Field):
    from .reduce import Certificate

    try:
        witness = obj.get("witness")
        if witness is None:
            w = None
        elif witness["type"] == "monomial":
            w = decode_witness(F, witness)
        elif witness["type"] == "matrix":
            w = decode_mat(F, witness["A"])
        else:
            raise ParseError(f"unknown witness type {witness['type']!r}")
        return Certificate(
            claim=obj["claim"],
            result=obj["result"],
            inputs=dict(obj.get("inputs") or {}),
            witness=w,
            transcript=dict(obj.get("transcript") or {}),
            verified=bool(obj.get("verified")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad certificate object: {exc}") from exc


# -- instance files --

def instance_file(kind: str, payload: dict, meta: dict | None = None) -> dict:
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    meta = dict(meta or {})
    meta["digest"] = digest(payload)
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload, "meta": meta}


def write_instance(path, kind: str, payload: dict, meta: dict | None = None):
    doc = instance_file(kind, payload, meta)
    with open(path, "w") as fh:
        fh.write(canonical_json(doc))
    return doc


def read_instance(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise ParseError("missing or unsupported schema version")
    if doc.get("kind") not in KINDS:
        raise ParseError(f"unknown kind {doc.get('kind')!r}")
    payload = doc.get("payload")
    meta = doc.get("meta") or {}
    if "digest" in meta and meta["digest"] != digest(payload):
        raise ParseError("payload digest mismatch")
    return doc
