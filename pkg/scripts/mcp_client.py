"""Call a tool on a running hunter-profiles FastMCP server.

Usage:
    python scripts/mcp_client.py --url http://localhost:3333/mcp --tool sonic_point gamma=1.1 eps=0.01

Numeric values are sent as floats; anything else is passed through as a string.
"""
from __future__ import annotations

import argparse
import asyncio
import json
from dataclasses import asdict, is_dataclass
from typing import Any

from fastmcp import Client


def _parse_param(arg: str) -> tuple[str, Any]:
    if "=" not in arg:
        raise argparse.ArgumentTypeError("Parameters must be in key=value format")
    key, value = arg.split("=", 1)
    try:
        return key, float(value)
    except ValueError:
        return key, value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument(
        "--url",
        default="http://localhost:3333/mcp",
        help="Base MCP endpoint exposed by the FastMCP server",
    )
    parser.add_argument("--tool", default="gamma_params", help="Tool name to invoke")
    parser.add_argument("--list", action="store_true", help="List available tools instead of calling one")
    parser.add_argument("params", nargs="*", type=_parse_param, help="Tool parameters as key=value")
    return parser


def _plain(value: Any) -> Any:
    if is_dataclass(value) and not isinstance(value, type):
        return asdict(value)
    for attr in ("model_dump", "to_dict"):
        method = getattr(value, attr, None)
        if callable(method):
            return method()
    data = getattr(value, "data", None)
    return data if data is not None else str(value)


async def _main_async(argv: list[str] | None = None) -> None:
    args = _build_parser().parse_args(argv)
    async with Client(args.url) as client:
        await client.ping()
        if args.list:
            for tool in await client.list_tools():
                print(f"- {tool.name}: {tool.description}")
            return
        result = await client.call_tool(args.tool, dict(args.params))
        print(json.dumps(_plain(result), indent=2, default=str))


def main() -> None:
    asyncio.run(_main_async())


if __name__ == "__main__":
    main()
