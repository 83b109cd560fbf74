# This file makes the commands directory a package
import argparse

from src.commands import bounds, estimate, exact, multi, zipf

COMMANDS = (exact, estimate, multi, bounds, zipf)


def register_commands(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    for command in COMMANDS:
        command.register(subparsers, parents)


__all__ = ["register_commands"]
