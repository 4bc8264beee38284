"""Command-line client for the scheduling service.

All subcommands talk to the HTTP API: either a remote server given via
``--server URL`` or, by default, an in-process copy of the app, so the
CLI works standalone and pipes compose (``gen tightness | solve ...``).
Exit codes: 0 success, 1 validation found violations, 2 usage or input
errors.
"""

from __future__ import annotations

import argparse
import sys

import httpx

from .errors import CoupledSchedError
from .serialize import dumps, parse_json


class _CommandError(Exception):
    """Carries the exit code for a failed command."""

    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _make_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=120.0)
    import warnings

    with warnings.catch_warnings():
        # starlette wants httpx2, which this environment does not ship yet
        warnings.filterwarnings("ignore", message=".*httpx2.*")
        from starlette.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    response = client.post(path, json=payload)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail")
        except ValueError:
            detail = response.text
        raise _CommandError(f"{path} failed ({response.status_code}): {detail}")
    return response.json()


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _CommandError(f"cannot read {path}: {exc}") from exc


def _write_text(path: str, content: str) -> None:
    if path == "-":
        sys.stdout.write(content)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(content)
    except OSError as exc:
        raise _CommandError(f"cannot write {path}: {exc}") from exc


def _cmd_gen(client: httpx.Client, args: argparse.Namespace) -> int:
    if args.generator == "tightness":
        data = _post(client, "/generate/tightness", {})
    elif args.generator == "3dm":
        payload: dict = {"eps_num": args.eps_num, "eps_den": args.eps_den, "seed": args.seed}
        if args.source is not None:
            payload["source"] = parse_json(_read_text(args.source), args.source)
        else:
            payload["random_n"] = args.random_n
        data = _post(client, "/generate/3dm", payload)
        target = data["target"]
        print(
            f"target: value(k) = {target['value_at_zero']} - "
            f"{3 * (target['scale'] - target['eps_num'])}*k  "
            f"(scale {target['scale']}, eps {target['eps_num']}/{target['eps_den']})",
            file=sys.stderr,
        )
    elif args.generator == "pit":
        payload = {"density": args.density, "seed": args.seed}
        if args.source is not None:
            payload["source"] = parse_json(_read_text(args.source), args.source)
        else:
            payload["random_q"] = args.random_q
        data = _post(client, "/generate/pit", payload)
        print(
            f"target makespan if a triangle partition exists: {data['target_makespan']}",
            file=sys.stderr,
        )
    else:  # random
        data = _post(
            client,
            "/generate/random",
            {
                "nx": args.nx,
                "ny": args.ny,
                "alpha_y": args.alpha_y,
                "density": args.density,
                "seed": args.seed,
            },
        )
    _write_text(args.output, dumps(data["instance"]))
    return 0


def _cmd_solve(client: httpx.Client, args: argparse.Namespace) -> int:
    instance = parse_json(_read_text(args.instance), args.instance)
    data = _post(
        client, "/solve", {"algo": args.algo, "instance": instance, "max_x": args.max_x}
    )
    print(f"makespan {data['makespan']}")
    if data["scale"] > 1:
        print(f"original units: {data['makespan_original']} (scale {data['scale']})")
    if data["algo"] == "approx":
        counts = data["counts"]
        print(f"f={counts['f']} m={counts['m']} s={counts['s']}")
    else:
        dec = data["decomposition"]
        print(
            f"nested pairs={dec['p']} nested singles={dec['r']} "
            f"outside pairs={dec['m']} isolated={dec['s']}"
        )
    if args.schedule_out is not None:
        _write_text(args.schedule_out, dumps(data["schedule"]))
    return 0


def _cmd_validate(client: httpx.Client, args: argparse.Namespace) -> int:
    instance = parse_json(_read_text(args.instance), args.instance)
    schedule = parse_json(_read_text(args.schedule), args.schedule)
    data = _post(client, "/validate", {"instance": instance, "schedule": schedule})
    if not data["hash_matches"]:
        print(
            "warning: schedule instance_hash does not match this instance",
            file=sys.stderr,
        )
    if data["ok"]:
        print(f"OK: makespan {data['makespan']}")
        return 0
    for violation in data["violations"]:
        pair = ",".join(violation["tasks"])
        print(f"violation {violation['kind']} ({pair}): {violation['detail']}")
    return 1


def _cmd_experiment(client: httpx.Client, args: argparse.Namespace) -> int:
    data = _post(
        client,
        "/experiment",
        {
            "corpus_size": args.corpus_size,
            "seed": args.seed,
            "max_x": args.max_x,
            "max_y": args.max_y,
            "max_alpha_y": args.max_alpha_y,
        },
    )
    print(f"{'instance':<10} {'|X|':>4} {'|Y|':>4} {'a_y':>4} {'approx':>7} {'exact':>6} {'ratio':>7}")
    for row in data["rows"]:
        print(
            f"{row['instance_id']:<10} {row['x_count']:>4} {row['y_count']:>4} "
            f"{row['alpha_y']:>4} {row['approx_makespan']:>7} {row['exact_makespan']:>6} "
            f"{row['ratio']:>7.4f}"
        )
    summary = data["summary"]
    print(f"max ratio  {summary['max_ratio']:.6f}")
    print(f"mean ratio {summary['mean_ratio']:.6f}")
    if args.output is not None:
        _write_text(args.output, dumps(data))
    return 0


def _cmd_gantt(client: httpx.Client, args: argparse.Namespace) -> int:
    instance = parse_json(_read_text(args.instance), args.instance)
    schedule = parse_json(_read_text(args.schedule), args.schedule)
    data = _post(
        client,
        "/render/gantt",
        {
            "instance": instance,
            "schedule": schedule,
            "format": "svg" if args.svg else "text",
        },
    )
    _write_text(args.output, data["content"])
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coupledsched",
        description="Schedule stretched coupled-tasks with compatibility constraints.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service (default: run the app in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance")
    gen_sub = gen.add_subparsers(dest="generator", required=True)

    g_tight = gen_sub.add_parser("tightness", help="the 5/4-ratio worst-case instance")
    g_tight.add_argument("-o", "--output", default="-", help="instance file (default stdout)")

    g_3dm = gen_sub.add_parser("3dm", help="gadget from a 3-dimensional matching source")
    g_3dm.add_argument("--source", help="source JSON file {n, triples}")
    g_3dm.add_argument("--random-n", type=int, help="random two-occurrence source of size n")
    g_3dm.add_argument("--seed", type=int, default=0)
    g_3dm.add_argument("--eps-num", type=int, default=1)
    g_3dm.add_argument("--eps-den", type=int, default=3)
    g_3dm.add_argument("-o", "--output", default="-")

    g_pit = gen_sub.add_parser("pit", help="gadget from a partition-into-triangles source")
    g_pit.add_argument("--source", help="source JSON file {parts, edges}")
    g_pit.add_argument("--random-q", type=int, help="random tripartite source with q per part")
    g_pit.add_argument("--density", type=float, default=0.5)
    g_pit.add_argument("--seed", type=int, default=0)
    g_pit.add_argument("-o", "--output", default="-")

    g_rand = gen_sub.add_parser("random", help="random quasi-split instance")
    g_rand.add_argument("--nx", type=int, required=True)
    g_rand.add_argument("--ny", type=int, required=True)
    g_rand.add_argument("--alpha-y", type=int, required=True)
    g_rand.add_argument("--density", type=float, default=0.5)
    g_rand.add_argument("--seed", type=int, default=0)
    g_rand.add_argument("-o", "--output", default="-")

    solve = sub.add_parser("solve", help="run a solver on an instance")
    solve.add_argument("--algo", choices=("approx", "exact"), required=True)
    solve.add_argument("-i", "--instance", default="-", help="instance file (default stdin)")
    solve.add_argument("-s", "--schedule-out", help="write the schedule JSON here")
    solve.add_argument("--max-x", type=int, default=20, help="exact solver size cap")

    val = sub.add_parser("validate", help="validate a schedule against an instance")
    val.add_argument("-i", "--instance", required=True)
    val.add_argument("-s", "--schedule", required=True)

    exp = sub.add_parser("experiment", help="approx-vs-exact ratio experiment")
    exp.add_argument("--corpus-size", type=int, required=True)
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--max-x", type=int, default=10)
    exp.add_argument("--max-y", type=int, default=3)
    exp.add_argument("--max-alpha-y", type=int, default=12)
    exp.add_argument("-o", "--output", help="write the JSON report here")

    gantt = sub.add_parser("gantt", help="render a schedule timeline")
    gantt.add_argument("-i", "--instance", required=True)
    gantt.add_argument("-s", "--schedule", required=True)
    gantt.add_argument("--svg", action="store_true", help="emit SVG instead of text")
    gantt.add_argument("-o", "--output", default="-")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


_HANDLERS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "validate": _cmd_validate,
    "experiment": _cmd_experiment,
    "gantt": _cmd_gantt,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "gen":
        if args.generator == "3dm" and (args.source is None) == (args.random_n is None):
            parser.error("gen 3dm: give exactly one of --source or --random-n")
        if args.generator == "pit" and (args.source is None) == (args.random_q is None):
            parser.error("gen pit: give exactly one of --source or --random-q")
    if args.command == "serve":
        return _cmd_serve(args)

    try:
        with _make_client(args.server) as client:
            return _HANDLERS[args.command](client, args)
    except _CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CoupledSchedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except httpx.HTTPError as exc:
        print(f"error: cannot reach server: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
