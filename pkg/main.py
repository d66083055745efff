"""
evercred - e-voting protocol simulator.

Runs honest elections and the attack scenarios end to end and prints a
pass/fail report:

    python main.py list
    python main.py run honest-election --voters 10 --mode passcode --2fa on
    python main.py run clash-attack --seed 7 --out report.txt
    python main.py verify registry.txt ballot_box.txt

Exit status of ``run`` is 0 iff every scenario assertion holds.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import config
from board import verifier
from errors import EvercredError
from scenarios import load_definitions, resolve_definition, run_scenario
from schemas import DeliveryModeEnum, ProfileEnum, RevotePolicyEnum

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evercred", description="E-voting protocol simulator")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run a scenario and print its report")
    run.add_argument("scenario", help="Scenario definition name or kind (see 'list')")
    run.add_argument("--voters", type=int, help="Number of voters")
    run.add_argument("--mode", choices=[m.value for m in DeliveryModeEnum], help="Credential delivery mode")
    run.add_argument("--2fa", dest="two_factor", type=_on_off, metavar="{on,off}", help="Second-factor authentication")
    run.add_argument("--profile", choices=[p.value for p in ProfileEnum], help="Group parameter profile")
    run.add_argument("--seed", type=int, help="Simulation seed")
    run.add_argument("--revote", choices=[r.value for r in RevotePolicyEnum], help="Revoting policy")
    run.add_argument("--baseline-anon-creds", dest="baseline", action="store_true", default=None,
                     help="Plain anonymous credentials (no identity commitment)")
    run.add_argument("--out", type=Path, help="Also write the report to this file")
    run.add_argument("--artifacts", type=Path, help="Directory for the registry and ballot box (honest elections)")

    commands.add_parser("list", help="List scenario definitions")

    verify = commands.add_parser("verify", help="Verify published artifacts")
    verify.add_argument("registry", type=Path)
    verify.add_argument("ballot_box", type=Path)
    return parser


def cmd_run(args: argparse.Namespace) -> int:
    definition = resolve_definition(args.scenario)
    overrides = {
        key: getattr(args, key)
        for key in ("voters", "mode", "two_factor", "profile", "seed", "revote", "baseline")
        if getattr(args, key) is not None
    }
    if overrides:
        settings = definition.settings.model_validate({**definition.settings.model_dump(), **overrides})
        definition = definition.model_copy(update={"settings": settings})

    report = run_scenario(definition, args.artifacts)
    text = report.render()
    print(text, end="")
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_list(args: argparse.Namespace) -> int:
    definitions = load_definitions()
    if not definitions:
        print(f"No scenario definitions in {config.SCENARIO_DIR}")
    for definition in definitions.values():
        print(f"{definition.name:<24} {definition.kind.value:<20} {definition.description}")
    return EXIT_PASS


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=config.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)

    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "list":
            return cmd_list(args)
        return verifier.main([str(args.registry), str(args.ballot_box)])
    except EvercredError as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
