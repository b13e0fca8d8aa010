"""Command-line client for the stablelab service.

The CLI is a thin HTTP client: by default it talks to the FastAPI app
in-process (no server needed); pass ``--server URL`` to target a running
instance (`uvicorn stablelab.service:app`).

Exit codes: 0 success (an empty model list is success), 1 domain error,
2 usage or parse error.
"""

from __future__ import annotations

import json
import sys

import click
import httpx


class _SyncASGITransport(httpx.BaseTransport):
    """Drive the ASGI app synchronously so the CLI needs no running server."""

    def __init__(self, app):
        self._inner = httpx.ASGITransport(app=app)

    def handle_request(self, request):
        import asyncio

        async def call():
            response = await self._inner.handle_async_request(request)
            body = b"".join([part async for part in response.stream])
            return httpx.Response(
                status_code=response.status_code,
                headers=response.headers,
                content=body,
            )

        return asyncio.run(call())


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    from .service.app import app

    return httpx.Client(transport=_SyncASGITransport(app), base_url="http://stablelab")


def _read_program(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)


def _post(ctx, endpoint, payload):
    try:
        resp = ctx.obj["client"].post(endpoint, json=payload)
    except httpx.HTTPError as e:
        click.echo(f"error: cannot reach service: {e}", err=True)
        sys.exit(1)
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
        message = f"{body.get('error', 'error')}: {body.get('detail', resp.text)}"
    except ValueError:
        message = resp.text
    click.echo(f"error: {message}", err=True)
    sys.exit(2 if resp.status_code == 400 else 1)


def _emit(ctx, data, text_fn):
    if ctx.obj["format"] == "text":
        click.echo(text_fn(data))
    else:
        click.echo(json.dumps(data, sort_keys=True))


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; defaults to in-process.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.pass_context
def main(ctx, server, fmt):
    """Stable-model toolbox: solve, inspect supports, export equations."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = _client(server)
    ctx.obj["format"] = fmt


method_option = click.option(
    "--method",
    type=click.Choice(["equations", "bruteforce", "schemes", "both"]),
    default="equations",
)


@main.command()
@click.argument("path")
@method_option
@click.option("--full", "reduced", flag_value=False, default=True, help="Use non-reduced equations.")
@click.option("--minimal", "reduced", flag_value=True, default=True)
@click.option("--max-atoms", default=20)
@click.option("--timeout-ms", default=None, type=int)
@click.pass_context
def solve(ctx, path, method, reduced, max_atoms, timeout_ms):
    """Print the stable models of a program file (or '-' for stdin)."""
    data = _post(ctx, "/solve", {
        "program": _read_program(path),
        "method": method,
        "reduced": reduced,
        "max_atoms": max_atoms,
        "timeout_ms": timeout_ms,
    })
    _emit(ctx, data, lambda d: "\n".join("{" + ", ".join(mdl) + "}" for mdl in d["models"]) or "no models")


@main.command()
@click.argument("path")
@click.option("--model", required=True, help="Comma-separated atom names.")
@click.pass_context
def check(ctx, path, model):
    """Check whether MODEL is a stable model; prints GL of it either way."""
    atoms = [a for a in model.split(",") if a]
    data = _post(ctx, "/check", {"program": _read_program(path), "model": atoms})
    _emit(ctx, data, lambda d: f"{'stable' if d['stable'] else 'unstable'}  gl = {{{', '.join(d['gl'])}}}")


@main.command()
@click.argument("path")
@click.option("--model", required=True)
@click.pass_context
def reduct(ctx, path, model):
    """Print the reduct of the program with respect to MODEL."""
    atoms = [a for a in model.split(",") if a]
    data = _post(ctx, "/reduct", {"program": _read_program(path), "model": atoms})
    _emit(ctx, data, lambda d: d["program"].rstrip("\n"))


@main.command()
@click.argument("path")
@click.option("--atom", required=True)
@click.option("--max", "max_steps", default=4)
@click.pass_context
def schemes(ctx, path, atom, max_steps):
    """Enumerate proof schemes concluding ATOM."""
    data = _post(ctx, "/schemes", {
        "program": _read_program(path), "atom": atom, "max_steps": max_steps,
    })

    def text(d):
        lines = []
        for s in d["schemes"]:
            steps = "; ".join(f"{st['clause']} => {st['atom']}" for st in s["steps"])
            lines.append(f"[{steps}]  support {{{', '.join(s['support'])}}}")
        return "\n".join(lines) or "no schemes"

    _emit(ctx, data, text)


@main.command()
@click.argument("path")
@click.option("--minimal/--full", default=True)
@click.pass_context
def supports(ctx, path, minimal):
    """Print the per-atom support family as JSON."""
    data = _post(ctx, "/supports", {"program": _read_program(path), "minimal": minimal})
    _emit(ctx, data["supports"], lambda d: json.dumps(d, sort_keys=True, indent=2))


@main.command()
@click.argument("path")
@click.option("--full", "reduced", flag_value=False, default=True)
@click.option("--minimal", "reduced", flag_value=True, default=True)
@click.option("--export-cnf", "cnf_path", default=None, type=click.Path())
@click.pass_context
def equations(ctx, path, reduced, cnf_path):
    """Print the defining-equation theory; optionally export its CNF."""
    data = _post(ctx, "/equations", {
        "program": _read_program(path), "reduced": reduced, "export_cnf": cnf_path is not None,
    })
    if cnf_path is not None:
        with open(cnf_path, "w") as fh:
            fh.write(data["cnf"])
        data = {"equations": data["equations"]}
    _emit(ctx, data, lambda d: "\n".join(d["equations"]))


@main.group()
@click.pass_context
def lab(ctx):
    """Operator-table experiments and family probes."""


@lab.command()
@click.option("--atoms", default=3)
@click.option("--exhaustive/--sampled", default=True)
@click.option("--samples", default=100)
@click.option("--seed", default=0)
@click.pass_context
def realize(ctx, atoms, exhaustive, samples, seed):
    """Realize antimonotone operator tables as programs and verify GL matches."""
    data = _post(ctx, "/lab/realize", {
        "atoms": atoms, "exhaustive": exhaustive, "samples": samples, "seed": seed,
    })
    _emit(ctx, data, lambda d: f"checked {d['checked']} tables, {len(d['failures'])} failures")
    if data["failures"]:
        sys.exit(1)


@lab.command()
@click.option("--family", type=click.Choice(["e2", "ex3"]), required=True)
@click.option("--to", "n_max", default=6)
@click.pass_context
def fsp(ctx, family, n_max):
    """Minimal-support growth probe over a program family."""
    data = _post(ctx, "/lab/fsp", {"family": family, "to": n_max})
    _emit(ctx, data, lambda d: " ".join(f"n={n}:{c}" for n, c in d["counts"]) + f"  [{d['trend']}]")


@lab.command()
@click.argument("path")
@click.pass_context
def antimono(ctx, path):
    """Check antimonotonicity of the program's GL table (small universes)."""
    data = _post(ctx, "/lab/antimono", {"program": _read_program(path)})
    _emit(ctx, data, lambda d: "antimonotone" if d["antimonotone"] else f"witness {d['witness']}")


@main.group()
@click.pass_context
def cc(ctx):
    """Cardinality-constraint program pipelines."""


@cc.command("solve")
@click.argument("path")
@method_option
@click.option("--full", "reduced", flag_value=False, default=True)
@click.option("--minimal", "reduced", flag_value=True, default=True)
@click.option("--max-atoms", default=20)
@click.pass_context
def cc_solve(ctx, path, method, reduced, max_atoms):
    data = _post(ctx, "/cc/solve", {
        "program": _read_program(path), "method": method, "reduced": reduced, "max_atoms": max_atoms,
    })
    _emit(ctx, data, lambda d: "\n".join("{" + ", ".join(mdl) + "}" for mdl in d["models"]) or "no models")


@cc.command("reduct")
@click.argument("path")
@click.option("--model", required=True)
@click.pass_context
def cc_reduct(ctx, path, model):
    atoms = [a for a in model.split(",") if a]
    data = _post(ctx, "/cc/reduct", {"program": _read_program(path), "model": atoms})
    _emit(ctx, data, lambda d: d["program"].rstrip("\n"))


@cc.command("supports")
@click.argument("path")
@click.option("--minimal/--full", default=True)
@click.pass_context
def cc_supports(ctx, path, minimal):
    data = _post(ctx, "/cc/supports", {"program": _read_program(path), "minimal": minimal})
    _emit(ctx, data["supports"], lambda d: json.dumps(d, sort_keys=True, indent=2))


@cc.command("equations")
@click.argument("path")
@click.option("--full", "reduced", flag_value=False, default=True)
@click.option("--minimal", "reduced", flag_value=True, default=True)
@click.pass_context
def cc_equations(ctx, path, reduced):
    data = _post(ctx, "/cc/equations", {"program": _read_program(path), "reduced": reduced})
    _emit(ctx, data, lambda d: "\n".join(d["equations"]))


if __name__ == "__main__":
    main()
