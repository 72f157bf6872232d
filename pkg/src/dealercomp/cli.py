"""Command-line front end.

Exit status: 0 on success, 1 on usage or validation errors, 2 when
``verify --strict`` finds a formula/oracle disagreement.
"""
from __future__ import annotations

import csv
import io
import json
import re
import sys

import click

from .combinatorics import Composition, render_tableau
from .counting import count as count_query
from .counting import is_closed_regime
from .errors import DealerCompError
from .oracle import enumerate_legal, oracle_count, sweep_queries, verify_sweep
from .probability import (
    CLOSED_PROBABILITY_MAX_SPAN,
    closed_form_probability,
    exact_probability,
    monte_carlo,
    outcome_distribution,
)
from .rules import Query, RuleSet, check_target, check_upcard

EXIT_USAGE = 1
EXIT_MISMATCH = 2


class Mismatch(Exception):
    pass


def _rules_options(fn):
    fn = click.option("--max-card", type=int, default=11, show_default=True,
                      help="Highest counted card value.")(fn)
    fn = click.option("--bust", type=int, default=21, show_default=True,
                      help="Largest total that does not bust.")(fn)
    fn = click.option("--stand", type=int, default=17, show_default=True,
                      help="Dealer stands on any total at or above this.")(fn)
    return fn


def _format_option(default="table"):
    return click.option("--format", "fmt", type=click.Choice(["table", "csv", "json"]),
                        default=default, show_default=True)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _table(rows) -> str:
    rows = [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "".join(
        "  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in rows
    )


def _range(text: str) -> range:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise click.BadParameter(f"expected A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    return range(lo, hi + 1)


def _rules_dict(r: RuleSet) -> dict:
    return {"stand": r.stand, "bust": r.bust, "max_card": r.max_card}


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="dealercomp")
def cli():
    """Count and enumerate the ways a blackjack dealer reaches a total.

    CARDS counts the face-down card plus every card drawn after it; the
    face-up card is excluded. An ace upcard is entered as 11.
    """


@cli.command("count")
@click.option("--cards", "-m", type=int, required=True, help="Face-down card plus draws.")
@click.option("--upcard", "-d", type=int, required=True)
@click.option("--target", "-w", type=int, required=True)
@_rules_options
@click.option("--breakdown", is_flag=True, help="Show every correction term.")
@click.option("--oracle", is_flag=True, help="Also count by brute-force dealer simulation.")
@_format_option()
def count_cmd(cards, upcard, target, stand, bust, max_card, breakdown, oracle, fmt):
    """Number of legal compositions given by the counting formulas."""
    r = RuleSet(stand, bust, max_card)
    q = Query(upcard=upcard, target=target, cards=cards).validate(r)
    bd = count_query(q, r)
    out = {"cards": cards, "upcard": upcard, "target": target, **_rules_dict(r),
           "regime": "closed" if is_closed_regime(q) else "general", "net": bd.net}
    if breakdown:
        out["breakdown"] = bd.to_dict()
    if oracle:
        out["oracle_count"] = oracle_count(q, r)
        out["match"] = out["oracle_count"] == bd.net

    if fmt == "json":
        click.echo(_json(out), nl=False)
    elif fmt == "csv":
        row = {k: v for k, v in out.items() if k != "breakdown"}
        if breakdown:
            row.update(bd.to_dict())
        click.echo(_csv([list(row), list(row.values())]), nl=False)
    elif not (breakdown or oracle):
        click.echo(bd.net)
    else:
        rows = list(bd.to_dict().items()) if breakdown else [("net", bd.net)]
        if oracle:
            rows += [("oracle", out["oracle_count"]),
                     ("status", "MATCH" if out["match"] else "MISMATCH")]
        click.echo(_table(rows), nl=False)


@cli.command("enumerate")
@click.option("--cards", "-m", type=int, required=True)
@click.option("--upcard", "-d", type=int, required=True)
@click.option("--target", "-w", type=int, required=True)
@_rules_options
@_format_option()
def enumerate_cmd(cards, upcard, target, stand, bust, max_card, fmt):
    """List the legal compositions, one per line, in lexicographic order."""
    r = RuleSet(stand, bust, max_card)
    q = Query(upcard=upcard, target=target, cards=cards).validate(r)
    comps = [c.parts for c in enumerate_legal(q, r)]
    if fmt == "json":
        click.echo(_json({"cards": cards, "upcard": upcard, "target": target,
                          **_rules_dict(r), "compositions": [list(c) for c in comps]}), nl=False)
    elif fmt == "csv":
        header = [f"part_{i}" for i in range(1, cards + 1)]
        click.echo(_csv([header, *comps]), nl=False)
    else:
        for c in comps:
            click.echo("+".join(map(str, c)))


@cli.command()
@click.option("--upcard", "-d", type=int, required=True)
@click.option("--target", "-w", type=int, required=True)
@_rules_options
@click.option("--exact", is_flag=True, help="Force the enumeration-weighted computation.")
@_format_option()
def prob(upcard, target, stand, bust, max_card, exact, fmt):
    """Probability that the dealer finishes on TARGET (infinite deck)."""
    r = RuleSet(stand, bust, max_card)
    check_upcard(upcard, r)
    check_target(target, r)
    if not exact and target - upcard <= CLOSED_PROBABILITY_MAX_SPAN:
        method, p = "closed_form", closed_form_probability(target, upcard, r)
    else:
        method, p = "exact", exact_probability(target, upcard, r)
    if fmt == "json":
        click.echo(_json({"upcard": upcard, "target": target, **_rules_dict(r),
                          "method": method, "probability": p}), nl=False)
    elif fmt == "csv":
        click.echo(_csv([["upcard", "target", "method", "probability"],
                         [upcard, target, method, repr(p)]]), nl=False)
    else:
        click.echo(f"{p:.4f}")


@cli.command()
@click.option("--upcard", "-d", type=int, required=True)
@_rules_options
@click.option("--mc", "trials", type=click.IntRange(min=1), default=None,
              help="Add a Monte Carlo estimate with this many hands.")
@click.option("--seed", type=int, default=0, show_default=True)
@_format_option()
def dist(upcard, stand, bust, max_card, trials, seed, fmt):
    """Exact distribution of the dealer's final total."""
    r = RuleSet(stand, bust, max_card)
    exact = outcome_distribution(upcard, r)
    mc = monte_carlo(upcard, r, trials=trials, seed=seed) if trials else None
    if fmt == "json":
        out = {"upcard": upcard, **_rules_dict(r), "exact": exact.to_dict()}
        if mc is not None:
            out["monte_carlo"] = mc.to_dict()
            out["seed"] = seed
        click.echo(_json(out), nl=False)
        return

    header = ["total", "probability", "stderr"]
    if mc is not None:
        header += ["mc_probability", "mc_stderr"]
    rows = []
    for key, p in exact.cells():
        row = [key, p, 0.0]
        if mc is not None:
            mc_p = mc.bust_mass if key == "bust" else mc.final_totals[key]
            row += [mc_p, mc.stderr[key]]
        rows.append(row)
    if fmt == "csv":
        click.echo(_csv([header, *[[c if isinstance(c, (int, str)) else repr(c) for c in row]
                                   for row in rows]]), nl=False)
    else:
        shown = [h for h in header if h != "stderr"]
        body = [[row[0], *(f"{v:.4f}" for i, v in enumerate(row[1:], 1) if i != 2)]
                for row in rows]
        click.echo(_table([shown, *body]), nl=False)


@cli.command()
@click.option("--upcard-range", "upcards", required=True, help="e.g. 2..11")
@click.option("--target-range", "targets", required=True, help="e.g. 17..21")
@click.option("--cards-max", type=click.IntRange(min=1), default=None)
@_rules_options
@click.option("--strict", is_flag=True, help="Exit 2 on any disagreement.")
@_format_option(default="csv")
def verify(upcards, targets, cards_max, stand, bust, max_card, strict, fmt):
    """Compare the counting formulas against the oracle over a sweep.

    Writes one CSV row per query; the agreement summary goes to stderr.
    """
    r = RuleSet(stand, bust, max_card)
    up, tg = _range(upcards), _range(targets)
    for d in up:
        check_upcard(d, r)
    for w in tg:
        check_target(w, r)
    report = verify_sweep(sweep_queries(up, tg, cards_max), r)
    summary = report.summary()
    if fmt == "json":
        click.echo(_json(report.to_dict()), nl=False)
    elif fmt == "csv":
        click.echo(report.to_csv(), nl=False)
    else:
        cols = ["m", "w", "s", "d", "b", "max_card", "regime", "formula_net",
                "oracle_count", "delta"]
        click.echo(_table([cols, *[[getattr(rec, c) for c in cols] for rec in report.records]]),
                   nl=False)
    if fmt != "json":
        for regime, tally in summary.items():
            click.echo(f"{regime}: {tally['agree']} agree, {tally['disagree']} disagree",
                       err=True)
    if strict and report.disagreements:
        raise Mismatch(f"{len(report.disagreements)} formula/oracle disagreement(s)")


@cli.command()
@click.argument("parts")
@_format_option()
def tableau(parts, fmt):
    """Render PARTS (comma separated, e.g. 3,2,4,1) as a Young tableau."""
    try:
        comp = Composition(tuple(int(p) for p in parts.split(",")))
    except ValueError as exc:
        raise click.BadParameter(f"expected comma-separated positive integers: {exc}")
    text = render_tableau(comp)
    if fmt == "json":
        click.echo(_json({"parts": list(comp.parts), "rows": text.split("\n")}), nl=False)
    elif fmt == "csv":
        click.echo(_csv([["row", "width"], *[[i, p] for i, p in enumerate(comp.parts, 1)]]),
                   nl=False)
    else:
        click.echo(text)


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="dealercomp", standalone_mode=False)
    except click.exceptions.Exit as exc:  # --help / --version
        return exc.exit_code
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except (DealerCompError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except Mismatch as exc:
        click.echo(f"mismatch: {exc}", err=True)
        return EXIT_MISMATCH
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
