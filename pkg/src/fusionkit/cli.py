"""Command line entry point: ``fusionkit check|wreath|fusion|run-all``.

Exit codes: 0 when every check passes, 1 when one fails, 2 on errors
(including unreadable input and unwritable output).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import pcgroup, verify

LEMMAS = ("3.1", "3.2", "3.3")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fusionkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the checks for one lemma")
    c.add_argument("--lemma", choices=LEMMAS, required=True)
    c.add_argument("--kind", choices=pcgroup.SYLOW_KINDS, help="Sylow type for --lemma 3.3 (default: all)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", help="write the JSON report here instead of stdout")
    c.add_argument("--corrupted", action="store_true", help="run the negative-control variant")

    w = sub.add_parser("wreath", help="wreath-product model check")
    w.add_argument("--base", choices=sorted(verify.WREATH_BASES), default="a6")
    w.add_argument("--out")
    w.add_argument("--corrupted", action="store_true")

    f = sub.add_parser("fusion", help="fusion-system invariant suite on a permutation group")
    f.add_argument("--group", required=True,
                   help="JSON group file, or one of: " + ", ".join(verify.BUILTIN_GROUPS))
    f.add_argument("--out")
    f.add_argument("--corrupted", action="store_true")

    r = sub.add_parser("run-all", help="run every check")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.add_argument("--only", action="append", default=None,
                   help="restrict to a check id such as check_lemma33:L34_f (repeatable)")
    r.add_argument("--list", action="store_true", help="print the check ids and exit")
    return p


def _emit(reports, out: str | None) -> int:
    text = verify.dumps_reports(reports)
    if out is None:
        print(text)
    else:
        try:
            Path(out).write_text(text + "\n")
        except OSError as exc:
            print(f"fusionkit: cannot write {out}: {exc}", file=sys.stderr)
            return 2
    return verify.exit_code(reports)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "check":
        if args.lemma == "3.1":
            reports = [verify.check_lemma31(args.seed, args.corrupted)]
        elif args.lemma == "3.2":
            reports = [verify.check_lemma32_scenarios(args.seed, args.corrupted)]
        else:
            kinds = [args.kind] if args.kind else list(pcgroup.SYLOW_KINDS)
            reports = [verify.check_lemma33(k, args.corrupted) for k in kinds]
        return _emit(reports, args.out)
    if args.command == "wreath":
        return _emit([verify.check_wreath_model(args.base, args.corrupted)], args.out)
    if args.command == "fusion":
        return _emit([verify.check_fusion_axioms(args.group, args.corrupted)], args.out)
    # run-all
    ids = [cid for cid, _ in verify.registry(args.seed)]
    if args.list:
        print("\n".join(ids))
        return 0
    if args.only:
        unknown = [o for o in args.only if o not in ids]
        if unknown:
            print(f"fusionkit: unknown check id(s): {', '.join(unknown)}", file=sys.stderr)
            return 2
    return _emit(verify.run_checks(args.seed, args.only), args.out)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
