"""Local HTTP bridge for browser front ends.

Serves a static directory (the built proof editor) plus one endpoint,
POST /api, that feeds each request body to a protocol Session and returns
the response.  One server process holds one session, mirroring the
one-document-per-tab model; this is a local development bridge, not a
deployment server.

    python -m aris.webbridge --root frontend --port 8000
"""
from __future__ import annotations

import argparse
import json
from functools import partial
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from threading import Lock

from .protocol import Session


class BridgeHandler(SimpleHTTPRequestHandler):
    def __init__(self, *args, session: Session, lock: Lock, **kwargs):
        self.session = session
        self.lock = lock
        super().__init__(*args, **kwargs)

    def do_POST(self):
        if self.path.rstrip("/") != "/api":
            self.send_error(404, "only /api accepts POST")
            return
        length = int(self.headers.get("Content-Length", 0))
        body = self.rfile.read(length)
        with self.lock:
            response = self.session.handle(body.decode("utf-8", "replace"))
        payload = json.dumps(response, ensure_ascii=False).encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, fmt, *args):  # keep test output quiet
        pass


def make_server(root: str, port: int, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    handler = partial(
        BridgeHandler, directory=root, session=Session(), lock=Lock()
    )
    return ThreadingHTTPServer((host, port), handler)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="serve the proof editor locally")
    parser.add_argument("--root", default="frontend", help="static files to serve")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args(argv)
    server = make_server(args.root, args.port, args.host)
    print(f"serving {args.root} on http://{args.host}:{args.port} (Ctrl-C stops)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
