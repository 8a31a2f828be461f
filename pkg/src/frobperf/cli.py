"""The ``frobperf`` command line: a small declaration/command language.

A script is a sequence of statements separated by newlines or ``;``::

    base R = GF(3)[u,v] / (u*v)
    algebra A over R = [x,y,t] / (x*y - u, t*(x-y) - 1)
    algebra B over GF(5) = [x] / (x^2*(x-1))
    morphism f : A -> A = { x -> x, y -> y, t -> t }
    preperfect A steps 3 probes [x + y] certificates [((x+y)*t, v)]
    pi0 B

Results go to stdout as one JSON document with sorted keys. Exit status is
0 for definite answers, 2 when some answer is indeterminate or hit a budget,
1 on errors.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .components import groupoid_pi0, pi0_ring, split_components
from .corering import PolyRing, StructuralError
from .corering.parse import ExprParser, ParseError, TokenStream, describe, tokenize
from .fpalg import (
    AlgebraMorphism,
    AlgebraPresentation,
    EngineFault,
    IllDefinedMorphism,
    ZeroAlgebraError,
    frobenius_twist,
    morphism_kernel,
    relative_frobenius,
    schematic_image,
    sup_factorization,
)
from .groebner import BudgetExceeded, budgets
from .groupoid import (
    Groupoid,
    Pregroupoid,
    cyclic_group,
    factorizations,
    groupoid_closure,
    groupoid_form_bijective,
    is_isomorphism_onto,
    pair_groupoid,
    validate_pregroupoid,
)
from .perfection import (
    CoherentCertificate,
    bounds_equal_base,
    certificate_witness,
    is_relatively_perfect,
    preperfect,
    theorem_c_crosscheck,
    unramified_check,
    verify_coherent_certificate,
)
from .subalg import FrobeniusChain

DECLARATIONS = ("base", "algebra", "morphism")
COMMANDS = (
    "frobtwist", "frobmap", "kernel", "image", "sup", "chain", "preperfect", "certify",
    "unramified", "relperfect", "pi0", "pi0-ring", "gpd-close", "gpd-verify", "crosscheck",
)
INDETERMINATE_STATUSES = {"budget_exceeded", "indeterminate", "unknown", "max_iterations"}


class SemanticError(ParseError):
    pass


@dataclass
class Command:
    name: str
    line: int
    args: dict


@dataclass
class Config:
    max_pairs: int = 200_000
    max_degree: int = 256
    max_steps: int = 4
    threads: int = 1
    seed: int = 0


@dataclass
class Session:
    bindings: dict = field(default_factory=dict)  # name -> (kind, object)
    commands: list = field(default_factory=list)
    config: Config = field(default_factory=Config)
    directory: str = "."

    def lookup(self, tok, kinds):
        if tok.value not in self.bindings:
            raise SemanticError(f"unknown name {tok.value!r}", tok.line, tok.col)
        kind, obj = self.bindings[tok.value]
        if kind not in kinds:
            raise SemanticError(
                f"{tok.value!r} is a {kind}, expected {' or '.join(kinds)}", tok.line, tok.col
            )
        return obj


# parsing


class _Parser:
    def __init__(self, text, session):
        self.s = TokenStream(tokenize(text))
        self.session = session

    def parse(self):
        s = self.s
        while True:
            while s.accept(";"):
                pass
            tok = s.peek()
            if tok.kind == "eof":
                return self.session
            word = self.word() if tok.kind == "ident" else None
            if word in DECLARATIONS:
                getattr(self, "decl_" + word)(tok)
            elif word in COMMANDS:
                self.command(word, tok)
            else:
                raise ParseError(
                    f"unexpected {describe(tok) if word is None else repr(word)}",
                    tok.line, tok.col, DECLARATIONS + COMMANDS,
                )
            self.end_statement(tok)

    def end_statement(self, start):
        tok = self.s.peek()
        prev = self.s.tokens[self.s.i - 1]
        if tok.kind == "eof" or self.s.at(";") or tok.line > prev.line:
            return
        self.s.error(f"unexpected {describe(tok)}", (";", "newline"))

    def word(self):
        """Identifier possibly joined with adjacent '-' parts, e.g. ``pi0-ring``."""
        s = self.s
        tok = s.next()
        out = tok.value
        while s.at("-") and self._adjacent(s.tokens[s.i - 1], s.peek()):
            nxt = s.peek(1)
            if nxt.kind not in ("ident", "int") or not self._adjacent(s.peek(), nxt):
                break
            s.next()
            out += "-" + s.next().value
        return out

    @staticmethod
    def _adjacent(a, b):
        return a.line == b.line and a.col + len(a.value) == b.col

    def raw_word(self):
        """A file path: a string literal or a run of adjacent tokens."""
        s = self.s
        tok = s.peek()
        if tok.kind == "str":
            s.next()
            return tok.value[1:-1]
        if tok.kind == "eof" or s.at(";"):
            s.error(f"unexpected {describe(tok)}", ("path",))
        out = s.next().value
        while s.peek().kind != "eof" and self._adjacent(s.tokens[s.i - 1], s.peek()):
            out += s.next().value
        return out

    def name(self):
        return self.s.expect_kind("ident", "identifier")

    def integer(self):
        return int(self.s.expect_kind("int", "integer").value)

    def ident_list(self, open_, close):
        s = self.s
        s.expect(open_)
        out = []
        if not s.at(close):
            out.append(self.name().value)
            while s.accept(","):
                out.append(self.name().value)
        s.expect(close)
        return out

    def expr_list(self, ring, open_="(", close=")"):
        s = self.s
        s.expect(open_)
        out = []
        if not s.at(close):
            out.append(self.expr(ring))
            while s.accept(","):
                out.append(self.expr(ring))
        s.expect(close)
        return out

    def expr(self, ring):
        return ExprParser(self.s, ring).expr()

    def field_p(self):
        s = self.s
        tok = s.expect("GF")
        s.expect("(")
        p = self.integer()
        s.expect(")")
        return p, tok

    def bind(self, tok, kind, obj):
        if tok.value in self.session.bindings:
            raise SemanticError(f"name {tok.value!r} already bound", tok.line, tok.col)
        self.session.bindings[tok.value] = (kind, obj)

    def _semantic(self, tok, fn):
        try:
            return fn()
        except (StructuralError, ZeroAlgebraError, IllDefinedMorphism, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise SemanticError(str(exc), tok.line, tok.col) from None

    def decl_base(self, start):
        s = self.s
        name = self.name()
        s.expect("=")
        p, ptok = self.field_p()
        gens = self.ident_list("[", "]")
        rels = []
        if s.accept("/"):
            rels = self.expr_list(self._ring(p, gens, ptok))
        allow = self._allow_zero()
        A = self._semantic(start, lambda: AlgebraPresentation(
            None, gens, rels, p=p, name=name.value, allow_zero=allow))
        self.bind(name, "base", A)

    def decl_algebra(self, start):
        s = self.s
        name = self.name()
        s.expect("over")
        if s.at("GF"):
            p, ptok = self.field_p()
            base = None
            base_vars = ()
        else:
            btok = self.name()
            base = self.session.lookup(btok, ("base", "algebra"))
            p, ptok, base_vars = base.p, btok, base.generators
        s.expect("=")
        gens = self.ident_list("[", "]")
        rels = []
        if s.accept("/"):
            rels = self.expr_list(self._ring(p, gens + list(base_vars), ptok))
        allow = self._allow_zero()
        A = self._semantic(start, lambda: AlgebraPresentation(
            base, gens, rels, p=p, name=name.value, allow_zero=allow))
        self.bind(name, "algebra", A)

    def _allow_zero(self):
        tok = self.s.peek()
        if tok.kind == "ident" and tok.value == "allow_zero":
            self.s.next()
            return True
        return False

    def _ring(self, p, names, tok):
        if len(set(names)) != len(names):
            raise SemanticError("repeated variable name", tok.line, tok.col)
        return self._semantic(tok, lambda: PolyRing(p, tuple(names)))

    def decl_morphism(self, start):
        s = self.s
        name = self.name()
        s.expect(":")
        A = self.session.lookup(self.name(), ("base", "algebra"))
        s.expect("->")
        B = self.session.lookup(self.name(), ("base", "algebra"))
        s.expect("=")
        s.expect("{")
        images = {}
        if not s.at("}"):
            while True:
                g = self.name()
                s.expect("->")
                images[g.value] = self.expr(B.ring)
                if not s.accept(","):
                    break
        s.expect("}")
        f = self._semantic(start, lambda: AlgebraMorphism(A, B, images, name=name.value))
        self.bind(name, "morphism", f)

    # commands

    def command(self, word, start):
        s = self.s
        args = {}
        alg = ("base", "algebra")
        if word in ("frobtwist", "frobmap", "chain"):
            args["A"] = self.session.lookup(self.name(), alg)
            args["n"] = self.integer()
        elif word in ("kernel", "image"):
            args["f"] = self.session.lookup(self.name(), ("morphism",))
        elif word == "sup":
            args["A"] = self.session.lookup(self.name(), alg)
            args["f1"] = self.session.lookup(self.name(), ("morphism",))
            args["f2"] = self.session.lookup(self.name(), ("morphism",))
        elif word in ("preperfect", "crosscheck"):
            A = args["A"] = self.session.lookup(self.name(), alg)
            args.update(self.preperfect_options(A))
        elif word == "certify":
            A = args["A"] = self.session.lookup(self.name(), alg)
            args["a"] = self.expr(A.ring)
            args["r"] = self.expr(A.ring)
            args["levels"] = 3
            if self._keyword("levels"):
                args["levels"] = self.integer()
        elif word in ("unramified", "relperfect", "pi0", "pi0-ring"):
            args["A"] = self.session.lookup(self.name(), alg)
        elif word in ("gpd-close", "gpd-verify"):
            path = self.raw_word()
            args["path"] = os.path.join(self.session.directory, path)
            args["iterations"] = 16
            if self._keyword("iterations"):
                args["iterations"] = self.integer()
        self.session.commands.append(Command(word, start.line, args))

    def _keyword(self, kw):
        tok = self.s.peek()
        if tok.kind == "ident" and tok.value == kw and tok.line == self.s.tokens[self.s.i - 1].line:
            self.s.next()
            return True
        return False

    def preperfect_options(self, A):
        s = self.s
        out = {"steps": None, "probes": [], "certificates": []}
        while True:
            if self._keyword("steps"):
                out["steps"] = self.integer()
            elif self._keyword("probes"):
                out["probes"] = self.expr_list(A.ring, "[", "]")
            elif self._keyword("certificates"):
                s.expect("[")
                while s.at("("):
                    tok = s.peek()
                    pair = self.expr_list(A.ring)
                    if len(pair) != 2:
                        raise SemanticError("a certificate is a pair (a, r)", tok.line, tok.col)
                    out["certificates"].append(tuple(pair))
                    if not s.accept(","):
                        break
                s.expect("]")
            else:
                return out


def render_presentation(A, name="A", base_name="R"):
    """Script text declaring A (and its base) so that it re-parses to A."""
    lines = []
    if A.base is not None:
        B = A.base
        rels = ", ".join(str(f) for f in B.relations)
        lines.append(f"base {base_name} = GF({A.p})[{','.join(B.generators)}] / ({rels})")
        over = base_name
    else:
        over = f"GF({A.p})"
    rels = ", ".join(str(f) for f in A.relations)
    zero = " allow_zero" if A.allow_zero else ""
    lines.append(f"algebra {name} over {over} = [{','.join(A.generators)}] / ({rels}){zero}")
    return "\n".join(lines) + "\n"


def parse_script(text, directory=".", config=None):
    """Parse and bind every declaration; commands are collected, not run."""
    session = Session(config=config or Config(), directory=directory)
    with budgets(max_pairs=session.config.max_pairs, max_degree=session.config.max_degree,
                 threads=session.config.threads):
        return _Parser(text, session).parse()


# running


def _polys(gens):
    return [str(g) for g in gens]


def _run_preperfect(session, args):
    steps = args["steps"] or session.config.max_steps
    return preperfect(args["A"], steps, probes=args["probes"], certificates=args["certificates"])


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_pregroupoid(path):
    obj = _load_json(path)
    data = obj.get("pregroupoid", obj)
    return Pregroupoid.from_json(data), obj.get("targets", [])


def _closure_report(C):
    out = C.to_json()
    if C.groupoid is not None:
        out["bijective"] = groupoid_form_bijective(C.groupoid.to_pregroupoid())
        out["groupoid_axioms"] = not C.groupoid.validate()
        out["orbits"] = groupoid_pi0(C.groupoid.U, [(C.groupoid.s[a], C.groupoid.t[a]) for a in C.groupoid.R])
    return out


def default_targets(C):
    """Targets every pregroupoid maps to: its closure, the pair groupoid on U, the trivial group."""
    P, G = C.source, C.groupoid
    ids = {x: x for x in P.U}
    out = [("closure", G, ids, dict(C.arrow_map))]
    out.append(("pair_groupoid", pair_groupoid(P.U), ids, {r: (P.s[r], P.t(r)) for r in P.R}))
    out.append(("trivial_group", cyclic_group(1), {x: "*" for x in P.U}, {r: 0 for r in P.R}))
    return out


def _run_command(session, cmd):
    a = cmd.args
    name = cmd.name
    if name == "frobtwist":
        return {"twist": frobenius_twist(a["A"], a["n"]).to_dict()}
    if name == "frobmap":
        phi = relative_frobenius(a["A"], a["n"])
        K = morphism_kernel(phi)
        return {"morphism": phi.to_dict(), "kernel": _polys(K.generators), "injective": K.is_zero()}
    if name == "kernel":
        K = morphism_kernel(a["f"])
        return {"kernel": _polys(K.generators), "zero": K.is_zero()}
    if name == "image":
        im = schematic_image(a["f"])
        return {"image": im.algebra.to_dict(), "kernel": _polys(im.kernel.generators),
                "inclusion": {g: str(v) for g, v in im.inclusion.images.items()}}
    if name == "sup":
        f1, f2 = a["f1"], a["f2"]
        if f1.target is not a["A"] or f2.target is not a["A"]:
            raise StructuralError("sup needs two morphisms into the named algebra")
        S = sup_factorization(a["A"], f1.source, f2.source, f1, f2)
        return {"sup": S.algebra.to_dict(),
                "inclusion": {g: str(v) for g, v in S.inclusion.images.items()},
                "first": {g: str(v) for g, v in S.first.images.items()},
                "second": {g: str(v) for g, v in S.second.images.items()}}
    if name == "chain":
        ch = FrobeniusChain(a["A"])
        levels = []
        for k in range(1, a["n"] + 1):
            try:
                stable = ch.stable_at(k - 1)
                levels.append({"level": k, "presentation": ch.level(k).to_dict(),
                               "equals_previous": stable})
            except BudgetExceeded as exc:
                return {"status": "budget_exceeded", "levels": levels, "reason": str(exc)}
        status = "indeterminate" if any(x["equals_previous"] is None for x in levels) else "ok"
        return {"status": status, "levels": levels}
    if name == "preperfect":
        rep = _run_preperfect(session, a)
        out = rep.to_dict()
        out["bounds_equal_base"] = bounds_equal_base(rep)
        out["candidate_unramified"] = (
            unramified_check(rep.candidate).to_dict() if rep.candidate is not None else None
        )
        return out
    if name == "certify":
        A = a["A"]
        c = CoherentCertificate.make(A, a["a"], a["r"])
        ok = verify_coherent_certificate(c)
        out = {"certificate": c.to_dict(), "verified": ok}
        if ok:
            ch = FrobeniusChain(A)
            levels = []
            for n in range(1, a["levels"] + 1):
                w = certificate_witness(ch, c, n)
                levels.append({"level": n, "witness": str(w),
                               "witness_checked": ch.check_witness(w, c.target, n),
                               "member": ch.member(c.target, n).status})
            out["levels"] = levels
        return out
    if name == "unramified":
        return unramified_check(a["A"]).to_dict()
    if name == "relperfect":
        return is_relatively_perfect(a["A"]).to_dict()
    if name == "pi0":
        return split_components(a["A"], seed=session.config.seed).to_dict()
    if name == "pi0-ring":
        P, inc = pi0_ring(split_components(a["A"], seed=session.config.seed))
        return {"ring": P.to_dict(), "images": {g: str(v) for g, v in inc.images.items()}}
    if name == "crosscheck":
        return _crosscheck(session, a)
    if name == "gpd-close":
        P, _ = _load_pregroupoid(a["path"])
        bad = validate_pregroupoid(P)
        if bad:
            return {"status": "invalid", "violations": [v.to_dict() for v in bad]}
        return _closure_report(groupoid_closure(P, a["iterations"]))
    if name == "gpd-verify":
        return _gpd_verify(a)
    raise AssertionError(name)


def _crosscheck(session, a):
    A = a["A"]
    rep = _run_preperfect(session, a)
    C, c_inc = rep.candidate, rep.candidate_inclusion
    if A.base is None:
        decomp = split_components(A, seed=session.config.seed)
        pi0 = pi0_ring(decomp)
        pi0_source = "components" if decomp.exact else "components (best effort)"
    else:
        # no component splitting over a non-field base: the pi_0 side is the
        # candidate assembled from coherent elements
        pi0 = (C, c_inc)
        pi0_source = "coherent candidate"
    if rep.status == "stabilized":
        prov = f"stabilized at {rep.at}"
    elif A.base is None:
        prov = f"{rep.status}, certified by pi0"
    else:
        prov = f"{rep.status}, {rep.grade}"
    out = theorem_c_crosscheck(A, pi0, (C, c_inc), prov)
    out["pi0_source"] = pi0_source
    out["preperfection"] = {"status": rep.status, "at": rep.at, "grade": rep.grade,
                            "candidate": C.to_dict()}
    return out


def _gpd_verify(a):
    P, extra = _load_pregroupoid(a["path"])
    bad = validate_pregroupoid(P)
    if bad:
        return {"status": "invalid", "violations": [v.to_dict() for v in bad]}
    C = groupoid_closure(P, a["iterations"])
    out = _closure_report(C)
    if C.groupoid is None:
        out["universal_property"] = None
        return out
    targets = default_targets(C)
    for k, t in enumerate(extra):
        T = Groupoid.from_json(t["groupoid"])
        targets.append((t.get("name", f"target{k + 1}"), T, dict(t["objects"]), dict(t["arrows"])))
    results = []
    verdict = True
    for label, T, fU, fR in targets:
        F = factorizations(C, T, fU, fR)
        results.append(dict(F.to_dict(), target=label))
        if F.status == "indeterminate":
            verdict = None if verdict else verdict
        elif F.status != "unique":
            verdict = False
    again = groupoid_closure(C.groupoid.to_pregroupoid(), a["iterations"])
    out["idempotent"] = is_isomorphism_onto(again)
    out["targets"] = results
    out["universal_property"] = verdict
    if verdict is None:
        out["status"] = "indeterminate"
    return out


def run_session(session):
    results = []
    code = 0
    cfg = session.config
    with budgets(max_pairs=cfg.max_pairs, max_degree=cfg.max_degree, threads=cfg.threads):
        for cmd in session.commands:
            entry = {"command": cmd.name, "line": cmd.line}
            try:
                res = _run_command(session, cmd)
                entry["result"] = res
                if isinstance(res, dict) and res.get("status") in INDETERMINATE_STATUSES:
                    code = code or 2
            except BudgetExceeded as exc:
                entry["result"] = {"status": "budget_exceeded", "reason": str(exc)}
                code = code or 2
            except (StructuralError, ZeroAlgebraError, IllDefinedMorphism, EngineFault,
                    OSError, ValueError, KeyError) as exc:
                entry["result"] = {"status": "error", "error": f"{type(exc).__name__}: {exc}"}
                code = 1
            results.append(entry)
    return {"results": results}, code


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(prog="frobperf")
    sub = ap.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run a script")
    run.add_argument("script")
    run.add_argument("--max-pairs", type=int, default=200_000)
    run.add_argument("--max-degree", type=int, default=256)
    run.add_argument("--max-steps", type=int, default=4)
    run.add_argument("--threads", type=int, default=1)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--json", dest="json_out")
    ns = ap.parse_args(argv)
    cfg = Config(ns.max_pairs, ns.max_degree, ns.max_steps, ns.threads, ns.seed)
    try:
        with open(ns.script, encoding="utf-8") as fh:
            text = fh.read()
        session = parse_script(text, os.path.dirname(os.path.abspath(ns.script)), cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"{ns.script}: {exc}", file=sys.stderr)
        return 1
    report, code = run_session(session)
    text = dumps(report)
    sys.stdout.write(text)
    if ns.json_out:
        with open(ns.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
