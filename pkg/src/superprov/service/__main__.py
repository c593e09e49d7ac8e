"""`python -m superprov.service` runs the demo server (requires uvicorn)."""
from __future__ import annotations

import argparse


def main() -> None:
    parser = argparse.ArgumentParser(prog="superprov.service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()

    import uvicorn

    uvicorn.run("superprov.service:app", host=args.host, port=args.port)


if __name__ == "__main__":
    main()
