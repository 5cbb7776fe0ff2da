"""Command-line interface.

Every subcommand is a thin client over the HTTP service: by default the
requests run against an in-process app (fully offline), while --server
points them at a remote instance instead.  Exit codes: 0 success, 1 failed
verification or replay, 2 PARTIAL certificate, 3 strict verification with
assumptions present, 64 malformed arguments or inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARTIAL = 2
EXIT_ASSUMED = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class ServiceError(Exception):
    def __init__(self, detail: str, exit_code: int):
        super().__init__(detail)
        self.exit_code = exit_code


def _request(server: str | None, method: str, path: str, payload=None) -> dict:
    import httpx

    if server:
        try:
            with httpx.Client(base_url=server, timeout=600.0) as client:
                resp = client.request(method, path, json=payload)
        except httpx.HTTPError as exc:
            raise ServiceError(f"cannot reach {server}: {exc}", EXIT_FAIL)
    else:
        import asyncio

        from .service.app import create_app

        async def go():
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://pellsieve.local", timeout=None
            ) as client:
                return await client.request(method, path, json=payload)

        resp = asyncio.run(go())
    try:
        body = resp.json()
    except ValueError:
        raise ServiceError(f"malformed response (HTTP {resp.status_code})", EXIT_FAIL)
    if resp.status_code >= 400:
        detail = body.get("detail", body)
        if not isinstance(detail, str):
            detail = json.dumps(detail)
        raise ServiceError(detail, EXIT_USAGE)
    return body


def cmd_search(args) -> int:
    body = _request(
        args.server,
        "POST",
        "/search",
        {"a": str(args.a), "b": str(args.b), "n_max": args.nmax},
    )
    for hit in body["hits"]:
        print(f"n={hit['n']} x={hit['x']}")
    return EXIT_OK


def cmd_prove(args) -> int:
    payload = {"a": str(args.a), "b": str(args.b)}
    if args.config:
        try:
            payload["config"] = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise ServiceError(f"cannot read config {args.config}: {exc}", EXIT_USAGE)
    body = _request(args.server, "POST", "/prove", payload)
    if args.out:
        Path(args.out).write_text(body["certificate"])
        solutions = " ".join(
            f"n={s['n']} x={s['x']}" for s in body["known_solutions"]
        )
        print(
            f"{body['status']} known_solutions=[{solutions}] "
            f"surviving={body['surviving_classes']} -> {args.out}"
        )
    else:
        sys.stdout.write(body["certificate"])
    return EXIT_OK if body["status"] == "COMPLETE" else EXIT_PARTIAL


def cmd_verify(args) -> int:
    try:
        text = Path(args.certificate).read_text()
    except OSError as exc:
        raise ServiceError(f"cannot read {args.certificate}: {exc}", EXIT_USAGE)
    body = _request(args.server, "POST", "/verify", {"certificate": text})
    for item in body["items"]:
        line = f"{item['status']:<7} {item['name']}"
        if item["detail"]:
            line += f" ({item['detail']})"
        print(line)
    statuses = {item["status"] for item in body["items"]}
    if not body["ok"]:
        print("verification FAILED")
        return EXIT_FAIL
    if args.strict and "ASSUMED" in statuses:
        print("verification passed, but assumptions remain (strict mode)")
        return EXIT_ASSUMED
    print("verification passed")
    return EXIT_OK


def cmd_pell(args) -> int:
    body = _request(args.server, "GET", f"/pell/{args.d}")
    print(f"x1={body['x1']} y1={body['y1']}")
    return EXIT_OK


def cmd_lucas(args) -> int:
    payload = {"p": str(args.p), "q": str(args.q), "n": str(args.n)}
    if args.mod is not None:
        payload["mod"] = str(args.mod)
    body = _request(args.server, "POST", "/lucas", payload)
    print(f"u={body['u']} v={body['v']}")
    return EXIT_OK


def cmd_scan(args) -> int:
    body = _request(
        args.server,
        "POST",
        "/scan",
        {"a_max": args.amax, "b_max": args.bmax, "n_max": args.nmax},
    )
    for hit in body["hits"]:
        print(f"{hit['a']} {hit['b']} {hit['n']} {hit['x']}")
    return EXIT_OK


def cmd_replay(args) -> int:
    body = _request(args.server, "GET", "/replay")
    for p in body["pairs"]:
        solutions = " ".join(f"n={s['n']} x={s['x']}" for s in p["known_solutions"])
        flags = "verified" if p["verified"] and p["matches_expected"] else "MISMATCH"
        print(
            f"({p['a']}, {p['b']}) {p['status']} [{solutions}] "
            f"surviving={p['surviving_classes']} {flags} {p['elapsed']:.2f}s"
        )
    passed = sum(1 for g in body["goldens"] if g["passed"])
    print(f"goldens: {passed}/{len(body['goldens'])} passed")
    for g in body["goldens"]:
        if not g["passed"]:
            print(f"golden FAILED: {g['fact']}")
    print("replay ok" if body["ok"] else "replay FAILED")
    return EXIT_OK if body["ok"] else EXIT_FAIL


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="pellsieve", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server", metavar="URL", help="remote service URL (default: in-process)"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("search", parents=[common], help="exact hits for one pair")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--nmax", type=int, default=30)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("prove", parents=[common], help="build a certificate")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--config", metavar="FILE", help="JSON sieve-config overrides")
    p.add_argument("--out", metavar="FILE", help="write certificate JSON here")
    p.set_defaults(handler=cmd_prove)

    p = sub.add_parser("verify", parents=[common], help="check a certificate file")
    p.add_argument("certificate", metavar="cert.json")
    p.add_argument(
        "--strict", action="store_true", help="exit 3 if assumptions remain"
    )
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("pell", parents=[common], help="fundamental solution of x^2 - d y^2 = 1")
    p.add_argument("d", type=int)
    p.set_defaults(handler=cmd_pell)

    p = sub.add_parser("lucas", parents=[common], help="Lucas pair U_n, V_n")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--mod", type=int)
    p.set_defaults(handler=cmd_lucas)

    p = sub.add_parser("scan", parents=[common], help="hits over a range of pairs")
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--bmax", type=int, required=True)
    p.add_argument("--nmax", type=int, default=30)
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("replay", parents=[common], help="rerun the reference suite")
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        sys.set_int_max_str_digits(0)
    except (AttributeError, ValueError):
        pass
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except ServiceError as exc:
        print(f"pellsieve: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
