"""Main entry point for MOCR Solver.

Exit codes:
    0  success
    1  unexpected error
    2  usage error
    3  game or outcome-set file could not be loaded
    4  an outcome that must be strictly positive has a zero component
    5  resource guard hit (brute-force budget, explicit tobacco size)
    6  MO-CR undefined (the game has no Pareto-Nash equilibrium)
    7  supplied covers failed verification
    8  invalid input (dimensions, parameters, profiles)
    9  an axiom check failed
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add src to path for imports when running directly
if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent))

from core.approx import CoverError, approx_mocr, approximate_mocr
from core.axioms import axiom_suite
from core.equilibria import equilibrium_analysis
from core.game_file import (
    GameLoadError,
    game_to_dict,
    load_game,
    load_outcome_set,
    parse_vector_text,
    save_game,
)
from core.generators import (
    DISTRIBUTIONS,
    GeneratorError,
    TobaccoSizeError,
    gen_random,
    gen_tobacco,
    tobacco_closed_form,
)
from core.mocr import BudgetExceededError, check_ratio, full_analysis, mo_cr, mo_cr_bruteforce
from core.pareto import efficient_subset, worst_subset
from core.report_writer import (
    FORMATS,
    approximation_document,
    axioms_document,
    check_document,
    emit_plot_points,
    emit_report,
    equilibria_document,
    frontier_document,
    ratio_set_document,
    render,
    vector_entry,
)
from models.game import GameError
from models.outcome import OutcomeError, PositivityError, parse_rational
from utils.config import Config
from utils.logger import setup_logger
from utils.parallel import resolve_threads
from version import APP_DESCRIPTION, APP_NAME, __version__

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_LOAD = 3
EXIT_POSITIVITY = 4
EXIT_RESOURCE = 5
EXIT_UNDEFINED = 6
EXIT_COVER = 7
EXIT_INPUT = 8
EXIT_AXIOM = 9

logger = logging.getLogger("MOCRSolver")


class MOCRSolverApp:
    """Runs one CLI command against the loaded configuration."""

    def __init__(self, args: argparse.Namespace, config: Config):
        self.args = args
        self.config = config
        self.threads = resolve_threads(args.threads, self.config.get_threads())
        self.precision = (
            args.precision if getattr(args, "precision", None) is not None
            else self.config.get_precision()
        )
        self.fmt = getattr(args, "format", "json")
        self.clip = getattr(args, "clip", False) or self.config.get_clip_ratios()

    def run(self) -> int:
        handler = getattr(self, "cmd_" + self.args.command.replace("-", "_"))
        return handler()

    def _write(self, text: str):
        output = getattr(self.args, "output", None)
        if output:
            Path(output).write_text(text + "\n", encoding="utf-8")
            logger.info(f"Wrote {output}")
        else:
            sys.stdout.write(text + "\n")

    def cmd_analyze(self) -> int:
        game = load_game(self.args.game)
        report = full_analysis(game, threads=self.threads)
        include_timings = self.config.get_include_timings() and not self.args.no_timings
        self._write(emit_report(report, self.fmt, self.precision, include_timings, self.clip))
        if self.args.plot:
            emit_plot_points(report, self.args.plot, self.precision, self.clip)
        return EXIT_OK if report.status == "defined" else EXIT_UNDEFINED

    def cmd_equilibria(self) -> int:
        game = load_game(self.args.game)
        equilibria = equilibrium_analysis(game, threads=self.threads)
        self._write(render(equilibria_document(equilibria, game.profile_labels, self.precision), self.fmt))
        return EXIT_OK

    def cmd_frontier(self) -> int:
        game = load_game(self.args.game)
        outcomes = game.outcome_set(threads=self.threads)
        doc = frontier_document(outcomes, efficient_subset(outcomes), game.profile_labels, self.precision)
        self._write(render(doc, self.fmt))
        return EXIT_OK

    def cmd_mocr_from_sets(self) -> int:
        worst = worst_subset(load_outcome_set(self.args.worst))
        efficient = efficient_subset(load_outcome_set(self.args.efficient))
        if self.args.bruteforce:
            budget = self.args.budget or self.config.get_bruteforce_budget()
            result = mo_cr_bruteforce(worst, efficient, budget=budget)
        else:
            result = mo_cr(worst, efficient, threads=self.threads)
        self._write(render(ratio_set_document(result, self.precision, self.clip), self.fmt))
        return EXIT_OK

    def cmd_check_ratio(self) -> int:
        rho = parse_vector_text(self.args.rho)
        check = check_ratio(rho, load_outcome_set(self.args.equilibria), load_outcome_set(self.args.efficient))
        self._write(render(check_document(rho, check, self.precision), self.fmt))
        return EXIT_OK

    def cmd_approx(self) -> int:
        E = load_outcome_set(self.args.equilibria)
        F = load_outcome_set(self.args.efficient)
        eps1, eps2 = parse_rational(self.args.eps1), parse_rational(self.args.eps2)
        if self.args.build:
            result, certificate = approximate_mocr(E, F, eps1, eps2, threads=self.threads)
        else:
            exact_E = load_outcome_set(self.args.exact_equilibria) if self.args.exact_equilibria else None
            exact_F = load_outcome_set(self.args.exact_efficient) if self.args.exact_efficient else None
            result, certificate = approx_mocr(E, F, eps1, eps2, exact_E, exact_F, threads=self.threads)
        self._write(render(approximation_document(result, certificate, self.precision, self.clip), self.fmt))
        return EXIT_OK

    def cmd_gen_random(self) -> int:
        alphas = [int(a) for a in self.args.alpha.split(",")]
        alphas = alphas[0] if len(alphas) == 1 else alphas
        max_payoff = self.args.max_payoff or self.config.get_random_max_payoff()
        game = gen_random(
            self.args.n, alphas, self.args.d, self.args.seed,
            distribution=self.args.distribution, max_payoff=max_payoff,
        )
        self._save_or_print(game)
        return EXIT_OK

    def cmd_gen_tobacco(self) -> int:
        if not self.args.closed_form:
            self._save_or_print(gen_tobacco(self.args.nu))
            return EXIT_OK

        closed = tobacco_closed_form(self.args.nu)
        result = mo_cr(closed.worst, closed.efficient)
        doc = {
            "nu": closed.nu,
            "equilibria_count": closed.equilibria_count,
            "worst_equilibria": [vector_entry(y, self.precision) for y in closed.worst],
            "efficient": [vector_entry(z, self.precision) for z in closed.efficient],
            "mocr": ratio_set_document(result, self.precision, self.clip),
        }
        self._write(render(doc, self.fmt))
        return EXIT_OK

    def cmd_axioms(self) -> int:
        E = load_outcome_set(self.args.equilibria)
        F = load_outcome_set(self.args.efficient)
        r = parse_vector_text(self.args.r)
        shrink = parse_vector_text(self.args.shrink) if self.args.shrink else None
        report = axiom_suite(E, F, r, shrink)
        self._write(render(axioms_document(report), self.fmt))
        return EXIT_OK if report.all_hold else EXIT_AXIOM

    def _save_or_print(self, game):
        if self.args.output:
            save_game(game, self.args.output)
            logger.info(f"Wrote {game.name} to {self.args.output}")
        else:
            sys.stdout.write(json.dumps(game_to_dict(game), indent=2, ensure_ascii=False) + "\n")


def _precision(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"precision must be >= 0, got {value}")
    return value


def _add_render_options(parser: argparse.ArgumentParser, clip: bool = True):
    parser.add_argument("--format", choices=FORMATS, default="json", help="Report format")
    parser.add_argument("--precision", type=_precision, help="Decimal places of rounded values")
    parser.add_argument("--output", "-o", help="Write the report to a file instead of stdout")
    if clip:
        parser.add_argument("--clip", action="store_true", help="Show ratios met with (1,...,1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mocr-solver",
        description=f"{APP_NAME}: {APP_DESCRIPTION}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, help="Worker threads (default: MOG_THREADS, config, all cores)")
    parser.add_argument("--config", help="Config file (default: ~/.mocr_solver/config.json)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Equilibria, efficient outcomes and MO-CR of a game")
    p.add_argument("game", help="Game file")
    _add_render_options(p)
    p.add_argument("--no-timings", action="store_true", help="Leave timings out of the report")
    p.add_argument("--plot", help="Also write tagged CSV plot points to this file")

    p = sub.add_parser("equilibria", help="Pareto-Nash equilibria and their outcomes")
    p.add_argument("game", help="Game file")
    _add_render_options(p, clip=False)

    p = sub.add_parser("frontier", help="Outcomes and efficient outcomes")
    p.add_argument("game", help="Game file")
    _add_render_options(p, clip=False)

    p = sub.add_parser("mocr-from-sets", help="MO-CR from worst-equilibrium and efficient outcome files")
    p.add_argument("worst", help="Worst equilibrium outcomes (any equilibrium outcomes work)")
    p.add_argument("efficient", help="Efficient outcomes")
    p.add_argument("--bruteforce", action="store_true", help="Enumerate every path instead")
    p.add_argument("--budget", type=int, help="Path budget of the brute force")
    _add_render_options(p)

    p = sub.add_parser("check-ratio", help="Does a ratio vector bound the inefficiency?")
    p.add_argument("--rho", required=True, help="Ratio vector, e.g. 3/4,11/15")
    p.add_argument("equilibria", help="Equilibrium outcomes")
    p.add_argument("efficient", help="Efficient outcomes")
    _add_render_options(p, clip=False)

    p = sub.add_parser("approx", help="MO-CR of approximate outcome sets")
    p.add_argument("equilibria", help="Lower cover of the equilibrium outcomes (exact set with --build)")
    p.add_argument("efficient", help="Upper cover of the efficient outcomes (exact set with --build)")
    p.add_argument("--eps1", required=True, help="Precision of the equilibrium cover")
    p.add_argument("--eps2", required=True, help="Precision of the efficient cover")
    p.add_argument("--build", action="store_true", help="Build both covers from exact sets")
    p.add_argument("--exact-equilibria", help="Exact equilibrium outcomes, to verify the cover")
    p.add_argument("--exact-efficient", help="Exact efficient outcomes, to verify the cover")
    _add_render_options(p)

    p = sub.add_parser("gen-random", help="Seeded random game")
    p.add_argument("--n", type=int, required=True, help="Number of agents")
    p.add_argument("--alpha", default="2", help="Actions per agent: one count or a comma list")
    p.add_argument("--d", type=int, required=True, help="Number of objectives")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--max-payoff", type=int, help="Largest payoff component")
    p.add_argument("--output", "-o", help="Game file to write (default: stdout)")

    p = sub.add_parser("gen-tobacco", help="Tobacco economy game or its closed-form sets")
    p.add_argument("--nu", type=int, required=True, help="Number of consumers")
    p.add_argument("--closed-form", action="store_true", help="Report sets and MO-CR without enumeration")
    _add_render_options(p)

    p = sub.add_parser("axioms", help="Ratio-scale and monotonicity checks on outcome sets")
    p.add_argument("equilibria", help="Equilibrium outcomes")
    p.add_argument("efficient", help="Efficient outcomes")
    p.add_argument("--r", required=True, help="Strictly positive scaling vector")
    p.add_argument("--shrink", help="Cap factors in (0,1] for the monotonicity perturbation")
    _add_render_options(p, clip=False)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the command and map failures to exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)

    config = Config(Path(args.config) if args.config else None)
    setup_logger(
        log_to_file=config.get_log_to_file(),
        level=logging.DEBUG if args.verbose else logging.INFO,
    )

    try:
        return MOCRSolverApp(args, config).run()
    except GameLoadError as e:
        logger.error(f"Load error: {e}")
        return EXIT_LOAD
    except PositivityError as e:
        logger.error(f"Positivity error: {e}")
        return EXIT_POSITIVITY
    except (BudgetExceededError, TobaccoSizeError) as e:
        logger.error(f"Resource limit: {e}")
        return EXIT_RESOURCE
    except CoverError as e:
        logger.error(f"Cover error: {e}")
        return EXIT_COVER
    except (OutcomeError, GameError, GeneratorError, ValueError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
