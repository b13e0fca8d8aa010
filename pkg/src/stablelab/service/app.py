"""FastAPI service wrapping the solver package.

Every pipeline is a stateless POST endpoint taking program text and returning
JSON.  Parse and usage problems map to 400, domain errors (atom limits,
support explosions, Horn violations) to 422.
"""

from __future__ import annotations

import random

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import cc as ccmod
from .. import equations, fixpoint, oplab, schemes, syntax
from ..errors import CompoundHead, ParseError, SolverError
from ..formulas import export_dimacs, format_formula
from . import models as m

app = FastAPI(title="stablelab", version="0.1.0")


@app.exception_handler(SolverError)
def _solver_error(request: Request, exc: SolverError):
    status = 400 if isinstance(exc, (ParseError, CompoundHead)) else 422
    return JSONResponse(
        status_code=status,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.exception_handler(KeyError)
def _unknown_atom(request: Request, exc: KeyError):
    return JSONResponse(
        status_code=400,
        content={"error": "UnknownAtom", "detail": f"unknown atom {exc.args[0]!r}"},
    )


def _names(prog, interp):
    return prog.atom_names(interp)


def _model_lists(prog, models):
    return [_names(prog, mdl) for mdl in models]


@app.post("/solve", response_model=m.SolveResponse, response_model_exclude_none=True)
def solve(req: m.SolveRequest):
    prog = syntax.parse_program(req.program)
    runners = {
        "bruteforce": lambda: fixpoint.stable_models_bruteforce(prog, limit=req.max_atoms),
        "equations": lambda: equations.stable_models_via_equations(prog, reduced=req.reduced),
        "schemes": lambda: equations.stable_models_via_schemes(prog, limit=req.max_atoms),
    }
    if req.method == "both":
        results = {name: run() for name, run in runners.items()}
        agree = len({tuple(map(tuple, map(sorted, v))) for v in results.values()}) == 1
        return m.SolveResponse(
            models=_model_lists(prog, results["equations"]),
            methods={k: _model_lists(prog, v) for k, v in results.items()},
            agree=agree,
        )
    return m.SolveResponse(models=_model_lists(prog, runners[req.method]()))


@app.post("/check", response_model=m.CheckResponse)
def check(req: m.CheckRequest):
    prog = syntax.parse_program(req.program)
    model = prog.interpretation(req.model)
    gl = fixpoint.gl_operator(prog, model)
    return m.CheckResponse(stable=gl == model, gl=_names(prog, gl))


@app.post("/reduct", response_model=m.ReductResponse)
def reduct(req: m.ReductRequest):
    prog = syntax.parse_program(req.program)
    model = prog.interpretation(req.model)
    return m.ReductResponse(program=syntax.pretty_program(fixpoint.gl_reduct(prog, model)))


@app.post("/schemes", response_model=m.SchemesResponse)
def schemes_endpoint(req: m.SchemesRequest):
    prog = syntax.parse_program(req.program)
    found = schemes.enumerate_schemes(prog, prog.atom(req.atom), req.max_steps)
    return m.SchemesResponse(
        schemes=[
            m.SchemeOut(
                steps=[
                    m.SchemeStep(
                        clause=syntax.pretty_clause(prog, prog.clauses[ci]),
                        atom=prog.names[a],
                    )
                    for ci, a in s.steps
                ],
                support=_names(prog, s.support),
            )
            for s in found
        ]
    )


@app.post("/supports", response_model=m.SupportsResponse)
def supports(req: m.SupportsRequest):
    prog = syntax.parse_program(req.program)
    if req.minimal:
        fam = schemes.minimal_support_family(prog)
        fam = {a: sorted(v, key=schemes.support_key) for a, v in fam.items()}
    else:
        fam = {a: schemes.all_supports(prog, a) for a in range(prog.n_atoms)}
    return m.SupportsResponse(
        supports={prog.names[a]: [_names(prog, u) for u in fam[a]] for a in sorted(fam)}
    )


@app.post("/equations", response_model=m.EquationsResponse, response_model_exclude_none=True)
def equations_endpoint(req: m.EquationsRequest):
    prog = syntax.parse_program(req.program)
    th = equations.theory(prog, reduced=req.reduced)
    texts = [format_formula(f, th.universe) for f in th.formulas]
    cnf = export_dimacs(th) if req.export_cnf else None
    return m.EquationsResponse(equations=texts, cnf=cnf)


@app.post("/lab/realize", response_model=m.LabRealizeResponse)
def lab_realize(req: m.LabRealizeRequest):
    failures = []
    checked = 0
    if req.exhaustive:
        tables = oplab.enumerate_antimonotone_tables(req.atoms)
    else:
        rng = random.Random(req.seed)
        tables = (
            oplab.random_antimonotone_table(req.atoms, rng) for _ in range(req.samples)
        )
    for table in tables:
        ok, witness = oplab.verify_operator_realization(table)
        checked += 1
        if not ok:
            failures.append(f"witness subset {sorted(witness)} on table #{checked}")
    return m.LabRealizeResponse(checked=checked, failures=failures)


@app.post("/lab/fsp", response_model=m.LabFspResponse)
def lab_fsp(req: m.LabFspRequest):
    counts, trend = oplab.fsp_growth_probe(req.family, req.to)
    return m.LabFspResponse(counts=counts, trend=trend)


@app.post("/lab/antimono", response_model=m.LabAntimonoResponse, response_model_exclude_none=True)
def lab_antimono(req: m.LabAntimonoRequest):
    prog = syntax.parse_program(req.program)
    witness = oplab.check_antimonotone(oplab.gl_table(prog))
    if witness is None:
        return m.LabAntimonoResponse(antimonotone=True)
    x, y = witness
    return m.LabAntimonoResponse(antimonotone=False, witness=(_names(prog, x), _names(prog, y)))


@app.post("/cc/solve", response_model=m.SolveResponse, response_model_exclude_none=True)
def cc_solve(req: m.SolveRequest):
    prog = ccmod.cc_parse(req.program)
    runners = {
        "bruteforce": lambda: ccmod.cc_stable_models_bruteforce(prog, limit=req.max_atoms),
        "equations": lambda: ccmod.cc_stable_models_via_equations(prog, reduced=req.reduced),
        "schemes": lambda: _cc_solve_schemes(prog, req.max_atoms),
    }
    if req.method == "both":
        results = {name: run() for name, run in runners.items()}
        agree = len({tuple(map(tuple, map(sorted, v))) for v in results.values()}) == 1
        return m.SolveResponse(
            models=_model_lists(prog, results["equations"]),
            methods={k: _model_lists(prog, v) for k, v in results.items()},
            agree=agree,
        )
    return m.SolveResponse(models=_model_lists(prog, runners[req.method]()))


def _cc_solve_schemes(prog, limit):
    n = prog.n_atoms
    if n > limit:
        from ..errors import TooManyAtoms

        raise TooManyAtoms(f"universe of {n} atoms exceeds sweep limit {limit}")
    fam = ccmod.cc_support_family(prog, minimal=True)
    out = []
    for mask in range(1 << n):
        mdl = frozenset(i for i in range(n) if mask >> i & 1)
        if ccmod.cc_gl_via_schemes(prog, mdl, fam) == mdl:
            out.append(mdl)
    return sorted(out, key=lambda s: tuple(sorted(s)))


@app.post("/cc/reduct", response_model=m.ReductResponse)
def cc_reduct(req: m.ReductRequest):
    prog = ccmod.cc_parse(req.program)
    model = prog.interpretation(req.model)
    return m.ReductResponse(program=ccmod.pretty_cc_program(ccmod.nss_reduct(prog, model)))


@app.post("/cc/supports", response_model=m.CCSupportsResponse)
def cc_supports(req: m.CCSupportsRequest):
    prog = ccmod.cc_parse(req.program)
    fam = ccmod.cc_support_family(prog, minimal=req.minimal)
    out = {}
    for a in sorted(fam):
        sups = sorted(fam[a], key=ccmod._support_canon_key)
        out[prog.names[a]] = [
            [
                m.CCSupportOut(atoms=_names(prog, x), upper=u)
                for x, u in sorted(sup, key=ccmod._constraint_sort_key)
            ]
            for sup in sups
        ]
    return m.CCSupportsResponse(supports=out)


@app.post("/cc/equations", response_model=m.EquationsResponse, response_model_exclude_none=True)
def cc_equations(req: m.EquationsRequest):
    prog = ccmod.cc_parse(req.program)
    th = ccmod.cc_theory(prog, reduced=req.reduced)
    texts = [format_formula(f, th.universe) for f in th.formulas]
    cnf = export_dimacs(th) if req.export_cnf else None
    return m.EquationsResponse(equations=texts, cnf=cnf)
