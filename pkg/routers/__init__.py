"""
Command routers package
"""

import argparse
from typing import Any, Callable, List, Sequence, Tuple

Argument = Tuple[Tuple[Any, ...], dict]


def arg(*names, **options) -> Argument:
    return names, options


class CommandRouter:
    """Collects subcommands the way an API router collects endpoints; app.py mounts them."""

    def __init__(self, tags: str):
        self.tags = tags
        self.commands: List[Tuple[str, str, Sequence[Argument], Callable]] = []

    def command(self, name: str, help: str, *arguments: Argument):
        def decorator(handler: Callable) -> Callable:
            self.commands.append((name, help, arguments, handler))
            return handler
        return decorator

    def mount(self, subparsers, parents: Sequence[argparse.ArgumentParser] = ()):
        for name, help, arguments, handler in self.commands:
            parser = subparsers.add_parser(name, help=help, description=help, parents=list(parents))
            for names, options in arguments:
                parser.add_argument(*names, **options)
            parser.set_defaults(handler=handler, tags=self.tags)
