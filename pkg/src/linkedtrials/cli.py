"""Command-line entry point: ``linkedtrials <subcommand> ...``.

Exit status 0 on success, 1 on usage errors, 2 on data or parse errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from . import __version__, ntriples
from .entity_model import EntitySet
from .errors import ConfigError, DataError, InvalidArgumentError
from .linkpipe import format_stats, load_entity_csv, load_linkspecs, run_all
from .qgram_sim import DEFAULT_Q, build_weight_table, tokenize
from .semjoin import SYNONYM, load_thesaurus, semantic_join
from .simjoin import brute_force_join, indexed_join
from .trial_ingest import build_entity_graph, entity_stats, read_corpus, triplify

logger = logging.getLogger("linkedtrials")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _read_values(path) -> list[str]:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return [r.match_field for r in load_entity_csv(path)]
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\r\n") for line in fh if line.strip()]


def _cmd_triplify(args):
    graph = build_entity_graph(read_corpus(args.input, args.jobs))
    with _output(args.out) as fh:
        n = ntriples.write(triplify(graph, args.base), fh)
    logger.info("wrote %d triples", n)


def _cmd_stats(args):
    graph = build_entity_graph(read_corpus(args.input, args.jobs))
    with _output(args.out) as fh:
        fh.write("entity\tcount\n")
        for label, n in entity_stats(graph):
            fh.write(f"{label}\t{n}\n")


def _cmd_link(args):
    rows, triples = run_all(load_linkspecs(args.config))
    if args.stats:
        with _output(args.stats) as fh:
            fh.write(format_stats(rows))
    with _output(args.out) as fh:
        n = ntriples.write(triples, fh)
    logger.info("wrote %d link triples", n)


def _cmd_tokenize(args):
    for tok in sorted(tokenize(args.string, args.q)):
        print(tok)


def _cmd_weights(args):
    w = build_weight_table(_read_values(args.base), args.q)
    rows = sorted(((t, n, w.weight(t)) for t, n in w.counts.items()),
                  key=lambda r: (-r[2], r[0]))
    with _output(args.out) as fh:
        for t, n, wt in rows:
            fh.write(f"{t}\t{n}\t{wt:.6f}\n")


def _load_pair(args) -> tuple[EntitySet, EntitySet]:
    return load_entity_csv(args.base, "base"), load_entity_csv(args.target, "target")


def _cmd_simjoin(args):
    base, target = _load_pair(args)
    if len(base) == 0:
        raise DataError("base entity set is empty", path=args.base)
    w = build_weight_table((r.match_field for r in base), args.q)
    join = brute_force_join if args.oracle else indexed_join
    res = join(base, target, args.theta, w)
    with _output(args.out) as fh:
        fh.write(res.to_tsv())


def _cmd_semjoin(args):
    base, target = _load_pair(args)
    th = load_thesaurus(args.thesaurus)
    with _output(args.out) as fh:
        for b, t in semantic_join(base, target, th, args.rel, args.depth):
            fh.write(f"{b}\t{t}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linkedtrials",
                description="Triplify trial XML and discover links between entity sets.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0,
                   help="repeat for more diagnostics on stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        return sp

    def add_jobs(sp):
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="parallel XML parsers (output does not depend on it)")

    sp = add("triplify", _cmd_triplify, "trial XML directory -> N-Triples")
    sp.add_argument("--in", dest="input", required=True, help="directory of .xml files")
    sp.add_argument("--base", default="http://example.org/resource", help="URI prefix")
    add_jobs(sp)

    sp = add("stats", _cmd_stats, "entity counts for a trial XML directory")
    sp.add_argument("--in", dest="input", required=True)
    add_jobs(sp)

    sp = add("link", _cmd_link, "run link specs; write links and statistics")
    sp.add_argument("--config", required=True, help="link spec file (INI)")
    sp.add_argument("--stats", default=None, help="statistics TSV output")

    sp = add("tokenize", _cmd_tokenize, "print the q-grams of a string")
    sp.add_argument("--q", type=int, default=DEFAULT_Q)
    sp.add_argument("string")

    sp = add("weights", _cmd_weights, "print token<TAB>n_t<TAB>weight for a base file")
    sp.add_argument("--base", required=True, help="one value per line, or id,name CSV")
    sp.add_argument("--q", type=int, default=DEFAULT_Q)

    sp = add("simjoin", _cmd_simjoin, "weighted Jaccard threshold join of two CSVs")
    sp.add_argument("--base", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--theta", type=float, default=0.5)
    sp.add_argument("--q", type=int, default=DEFAULT_Q)
    sp.add_argument("--oracle", action="store_true", help="use the brute-force join")

    sp = add("semjoin", _cmd_semjoin, "thesaurus join of two CSVs")
    sp.add_argument("--base", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--thesaurus", required=True)
    sp.add_argument("--rel", default=SYNONYM)
    sp.add_argument("--depth", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (InvalidArgumentError, UsageError) as exc:
        print(f"linkedtrials: error: {exc}", file=sys.stderr)
        return 1
    except (DataError, ConfigError, OSError, UnicodeDecodeError) as exc:
        print(f"linkedtrials: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
