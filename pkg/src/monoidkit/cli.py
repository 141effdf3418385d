"""Command-line entry point: ``monoidkit <command> [options]``.

Exit codes: 0 ok, 1 usage or bad input, 2 budget exhausted, 3 internal
invariant breach.  Output is assembled in full before anything is printed,
so an error never leaves half a JSON document on stdout.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from . import dfa as D
from . import lang, pseudovar as pv
from .burnside import BurnsideError, OracleUnavailable, burnside_group
from .corpus import random_transformation_monoids
from .monoid import (ElementCapExceeded, FiniteMonoid, MonoidError, OrderedMonoid, cyclic_group,
                     green_data, loads_monoid, trivial_monoid)
from .presentations import (Presentation, PresentationError, Undecided, builder_monoid_0,
                            builder_monoid_1, enumerate_presentation)
from .provability import provable_leq
from .regex import RegexError
from .terms import BudgetExceeded, Int, One, Power, Pseudoidentity, TermError, Variable, Concat, check, parse_term

EXIT_USAGE, EXIT_BUDGET, EXIT_INTERNAL = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _sha(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()[:16]


def _read(path: str, inputs: dict) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    text = p.read_text()
    inputs[path] = _sha(text)
    return text


def _strip_millis(obj):
    if isinstance(obj, dict):
        return {k: _strip_millis(v) for k, v in obj.items() if k != "millis"}
    if isinstance(obj, list):
        return [_strip_millis(v) for v in obj]
    return obj


# -- monoid sources ---------------------------------------------------------


def _builtin_monoid(name: str):
    """``trivial``, ``C<k>``, ``ex0:<n>``, ``ex1:<n>``, ``L2``, ``L3``."""
    if name == "trivial":
        return trivial_monoid()
    if name[:1] == "C" and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name in ("L2", "L3"):
        return lang.syntactic_ordered_monoid(_lang_n(int(name[1]))).order
    for key, build in (("ex0:", builder_monoid_0), ("ex1:", builder_monoid_1)):
        if name.startswith(key) and name[len(key):].isdigit():
            return enumerate_presentation(build(int(name[len(key):]))).monoid
    return None


def _lang_n(n: int):
    return lang.lang_L2() if n == 2 else lang.lang_Ln(n)


def _alphabet(args) -> str:
    """Explicit ``--alphabet``, else the regex letters together with ``a`` and ``b``."""
    if args.alphabet:
        return args.alphabet
    from .regex import infer_alphabet
    return "".join(sorted(set(infer_alphabet(args.regex)) | {"a", "b"}))


def _source(args, inputs) -> tuple[str, FiniteMonoid | OrderedMonoid]:
    if getattr(args, "regex_L2", False):
        inputs["regex-L2"] = _sha("L2")
        return "Synt(L2)", lang.syntactic_ordered_monoid(lang.lang_L2()).order
    if getattr(args, "regex", None) is not None:
        inputs["regex"] = _sha(args.regex)
        return f"Synt({args.regex})", lang.synt(args.regex, _alphabet(args)).order
    if getattr(args, "dfa_file", None):
        dfa = D.loads_dfa(_read(args.dfa_file, inputs))
        return f"Synt({args.dfa_file})", lang.syntactic_ordered_monoid(dfa).order
    if getattr(args, "monoid", None):
        if Path(args.monoid).is_file():
            return args.monoid, loads_monoid(_read(args.monoid, inputs))
        M = _builtin_monoid(args.monoid)
        if M is None:
            raise UsageError(f"--monoid: {args.monoid!r} is neither a file nor a builtin "
                             "(trivial, C<k>, ex0:<n>, ex1:<n>, L2, L3)")
        inputs["monoid"] = _sha(args.monoid)
        return args.monoid, M
    raise UsageError("give one of --regex, --regex-L2, --dfa-file, --monoid")


def _plain(M):
    return M.monoid if isinstance(M, OrderedMonoid) else M


# -- commands -----------------------------------------------------------------


def cmd_synt(args, inputs) -> tuple[dict, str]:
    if args.regex is None and not args.dfa_file:
        raise UsageError("synt needs --regex or --dfa-file")
    if args.regex is not None:
        inputs["regex"] = _sha(args.regex)
        res = lang.synt(args.regex, _alphabet(args))
    else:
        res = lang.syntactic_ordered_monoid(D.loads_dfa(_read(args.dfa_file, inputs)))
    M = res.monoid
    g = green_data(M)
    out = {
        "size": M.size,
        "dfa_states": res.dfa.states,
        "idempotents": len(M.idempotents),
        "green_classes": {r: g.num_classes(r) for r in "RLJH"},
        "letter_map": {a: M.label(e) for a, e in res.letter_map.items()},
        "aperiodic": pv.membership(M, "A").verdict,
        "bg": pv.membership(M, "BG").verdict,
    }
    lines = [f"size {M.size}  idempotents {out['idempotents']}  dfa states {res.dfa.states}",
             "green classes " + " ".join(f"{r}={c}" for r, c in out["green_classes"].items()),
             "letters " + " ".join(f"{a}->{lab}" for a, lab in out["letter_map"].items()),
             f"aperiodic {out['aperiodic']}  BG {out['bg']}"]
    if args.order:
        leq = res.order.leq
        pairs = int(leq.sum())
        r = check(res.order, pv.one_leq_xn(args.n))
        out["order"] = {"pairs": pairs, "strict_pairs": pairs - M.size, "n": args.n,
                        "one_leq_xn": r.holds,
                        "witness": None if r else {v: M.label(e) for v, e in r.witness.items()}}
        lines.append(f"order pairs {pairs} (strict {pairs - M.size})  1<=x^{args.n}: {r.holds}")
    return out, "\n".join(lines)


def cmd_check(args, inputs):
    if args.lhs is None or args.rhs is None:
        raise UsageError("check needs --lhs and --rhs")
    pid = Pseudoidentity(parse_term(args.lhs), parse_term(args.rhs), "leq" if args.leq else "eq")
    name, M = _source(args, inputs)
    r = check(M, pid, budget=args.budget)
    base = _plain(M)
    out = {"source": name, "size": base.size, "pseudoidentity": str(pid), "holds": r.holds,
           "checked": r.checked, "witness": None}
    text = f"{pid}  on {name} ({base.size} elements): {'TRUE' if r else 'FALSE'}"
    if not r:
        out["witness"] = {v: base.label(e) for v, e in r.witness.items()}
        out["lhs_value"] = base.label(r.lhs_value)
        out["rhs_value"] = base.label(r.rhs_value)
        text += "\n  witness " + ", ".join(f"{v}={lab}" for v, lab in out["witness"].items())
        text += f"\n  lhs={out['lhs_value']}  rhs={out['rhs_value']}"
    return out, text


def cmd_member(args, inputs):
    name, M = _source(args, inputs)
    if args.variety == "1<=x^n":
        r = check(M, pv.one_leq_xn(args.n))
        rep = pv.MembershipReport("1<=x^n", args.n, r.holds,
                                  None if r else {"witness": {v: _plain(M).label(e) for v, e in r.witness.items()}})
    else:
        rep = pv.membership(_plain(M), args.variety, args.n, budget=args.budget)
    if rep.verdict is None and rep.note and "unsupported" not in rep.note:
        raise BudgetExceeded(rep.note)
    out = {"source": name, **rep.to_json()}
    text = f"{name} in {args.variety}" + (f" (n={args.n})" if args.n else "") + f": {rep.verdict}"
    if rep.note:
        text += f"  [{rep.note}]"
    if rep.certificate:
        text += "\n  certificate " + json.dumps(_strip_millis(rep.certificate), sort_keys=True)
    return out, text


def _builtin_witnesses(n: int):
    """Named witnesses with the verdicts they are expected to separate."""
    rows = [
        ("(0) presentation", enumerate_presentation(builder_monoid_0(n)).monoid,
         {"BHn": True, "EJn": False}),
        ("(1) presentation", enumerate_presentation(builder_monoid_1(n)).monoid,
         {"EJn": True, "BGn_W": False}),
    ]
    if n in (2, 3):
        res = lang.syntactic_ordered_monoid(_lang_n(n))
        rows.append((f"Synt(L{n})", res.order, {"1<=x^n": True, "JmHn": False, "JsHn": False}))
    return rows


COLUMNS = pv.VARIETIES + ("1<=x^n",)


def _cell(rep):
    if rep is None:
        return "-"
    if rep.verdict is None:
        return "unsupported" if rep.note == "unsupported" else "?"
    return "T" if rep.verdict else "F"


def cmd_survey(args, inputs):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    items = []
    # with no source given, survey the builtin witnesses
    if args.builtin_witnesses or not (args.monoid_file or args.samples):
        items += _builtin_witnesses(args.n)
    for path in args.monoid_file or []:
        items.append((path, loads_monoid(_read(path, inputs)), {}))
    if args.samples:
        for it in random_transformation_monoids(args.samples, seed=args.seed):
            items.append((it.name, it.monoid, {}))
    rows = []
    for name, M, expect in items:
        row = pv.survey(M, args.n, budget=args.budget)
        verdicts = {c: (row.reports[c].verdict if c in row.reports else None) for c in COLUMNS}
        entry = {"name": name, "size": _plain(M).size, "verdicts": verdicts,
                 "unsupported": sorted(c for c, r in row.reports.items() if r.note == "unsupported")}
        if expect:
            entry["expected"] = expect
            entry["reproduced"] = all(verdicts[c] == v for c, v in expect.items())
            entry["certificates"] = {c: row.reports[c].certificate for c, v in expect.items()
                                     if v is False and row.reports[c].certificate}
        rows.append((entry, row))
    out = {"n": args.n, "columns": list(COLUMNS), "rows": [e for e, _ in rows]}
    width = max(len(e["name"]) for e, _ in rows)
    cells = [[_cell(row.reports.get(c)) for c in COLUMNS] for _, row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(COLUMNS)]
    lines = [f"{'monoid':<{width}} {'size':>5} " + " ".join(f"{c:>{w}}" for c, w in zip(COLUMNS, widths))]
    for (e, _), r in zip(rows, cells):
        line = f"{e['name']:<{width}} {e['size']:>5} " + " ".join(f"{v:>{w}}" for v, w in zip(r, widths))
        if "reproduced" in e:
            line += "  separation " + ("ok" if e["reproduced"] else "NOT reproduced")
        lines.append(line)
    return out, "\n".join(lines)


def cmd_provable(args, inputs):
    inputs["from"], inputs["to"] = _sha(args.from_), _sha(args.to)
    r = provable_leq(args.from_, args.to, args.n, node_budget=args.node_budget)
    if not r and r.reason == "node budget exhausted":
        raise BudgetExceeded(f"node budget {args.node_budget} exhausted")
    out = {"from": args.from_, "to": args.to, "n": args.n, "provable": r.provable,
           "explored": r.explored, "reason": r.reason,
           "proof": r.proof.to_json() if r.proof else None}
    text = f"{args.from_ or '1'} <= {args.to or '1'} from 1 <= x^{args.n}: {r.provable}"
    if r.proof:
        w = r.proof.start
        for pos, base in r.proof.steps:
            w2 = w[:pos] + base * args.n + w[pos:]
            text += f"\n  {w or '1'} -> {w2}   (insert ({base})^{args.n} at {pos})"
            w = w2
    elif r.reason:
        text += f"  [{r.reason}]"
    return out, text


def cmd_present(args, inputs):
    if args.file:
        p = Presentation.loads(_read(args.file, inputs))
    elif args.builder:
        if args.n is None:
            raise UsageError("--builder needs --n")
        p = {"ex0": builder_monoid_0, "ex1": builder_monoid_1}[args.builder](args.n)
    else:
        raise UsageError("present needs --builder or --file")
    em = enumerate_presentation(p, cap=args.cap)
    M = em.monoid
    g = green_data(M)
    out = {"presentation": p.dumps().splitlines(), "size": M.size,
           "elements": M.element_labels, "rules": len(em.system.rules),
           "idempotents": [M.label(e) for e in M.idempotents],
           "regular_j_classes": len(g.regular_j_classes()),
           "zero": None if em.zero is None else M.label(em.zero)}
    text = (f"{M.size} elements, {out['rules']} rewriting rules, "
            f"{out['regular_j_classes']} regular J-classes\n"
            f"elements: {' '.join(out['elements'])}\nidempotents: {' '.join(out['idempotents'])}")
    return out, text


def _expand_word(text: str) -> str:
    """Accept plain words or integer-exponent expressions like ``(y^2 x)^2 (x y)^2 x^2``."""
    if not text or text == "1":
        return ""
    t = parse_term(text)

    def flat(t):
        if isinstance(t, One):
            return ""
        if isinstance(t, Variable):
            return t.name
        if isinstance(t, Concat):
            return "".join(flat(p) for p in t.parts)
        if isinstance(t, Power):
            if not isinstance(t.exp, Int):
                raise UsageError("omega exponents are meaningless in a Burnside group word")
            return flat(t.base) * t.exp.k
        raise TypeError(t)

    return flat(t)


def cmd_burnside(args, inputs):
    out = {"n": args.n}
    lines = []
    if args.word is not None:
        inputs["word"] = _sha(args.word)
        word = _expand_word(args.word)
        gens = args.gens or "".join(sorted(set(word))) or "x"
        G = burnside_group(gens, args.n)
        nf = G.sigma(word)
        out.update({"gens": gens, "word": word, "normal_form": G.format(nf),
                    "exponents": list(nf), "is_identity": G.is_identity(nf)})
        lines.append(f"sigma({word or '1'}) in B({len(gens)},{args.n}) = {G.format(nf)}")
    if args.enumerate is not None:
        gens = "".join(chr(ord("a") + i) for i in range(args.enumerate))
        G = burnside_group(gens, args.n)
        elems = G.enumerate()
        # repeated multiplication, not G.power, which reduces the exponent mod n
        exp_ok = all(G.is_identity(_pow_raw(G, e, args.n)) for e in elems)
        out["enumeration"] = {"k": args.enumerate, "order": len(elems), "formula": G.order(),
                              "exponent_holds": exp_ok}
        lines.append(f"|B({args.enumerate},{args.n})| = {len(elems)}; x^{args.n} = 1 on all: {exp_ok}")
    if not lines:
        raise UsageError("burnside needs --word or --enumerate")
    return out, "\n".join(lines)


def _pow_raw(G, e, n):
    acc = G.identity
    for _ in range(n):
        acc = G.multiply(acc, e)
    return acc


# -- parser -------------------------------------------------------------------


def _add_source(p, monoid=True):
    p.add_argument("--regex", help="regular expression over the letters it uses")
    p.add_argument("--alphabet", help="alphabet for --regex (default: its letters plus a, b)")
    p.add_argument("--regex-L2", action="store_true", help="the language L2 over {a,b,c}")
    p.add_argument("--dfa-file")
    if monoid:
        p.add_argument("--monoid", help="monoid file, or builtin: trivial, C<k>, ex0:<n>, ex1:<n>, L2, L3")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="monoidkit", description="Finite monoids, syntactic orders and the inequality 1 <= x^n.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON run report")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=float, default=1e9, help="max substitutions per check")

    p = sub.add_parser("synt", help="syntactic ordered monoid of a language")
    p.add_argument("--regex")
    p.add_argument("--alphabet", help="alphabet for --regex (default: its letters plus a, b)")
    p.add_argument("--dfa-file")
    p.add_argument("--order", action="store_true")
    p.add_argument("--n", type=int, default=2)
    common(p)

    p = sub.add_parser("check", help="check a pseudoidentity or inequality")
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--leq", action="store_true", help="check lhs <= rhs instead of lhs = rhs")
    _add_source(p)
    common(p)

    p = sub.add_parser("member", help="decide membership in a pseudovariety")
    p.add_argument("--variety", required=True, choices=pv.VARIETIES + ("1<=x^n",))
    p.add_argument("--n", type=int)
    _add_source(p)
    common(p)

    p = sub.add_parser("survey", help="membership table over witnesses and a seeded corpus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--builtin-witnesses", action="store_true")
    p.add_argument("--samples", type=int, default=0, help="number of random transformation monoids")
    p.add_argument("--monoid-file", action="append")
    common(p)

    p = sub.add_parser("provable", help="is v obtained from u by inserting n-th powers?")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--node-budget", type=int, default=2_000_000)
    common(p)

    p = sub.add_parser("present", help="enumerate a finite monoid presentation")
    p.add_argument("--builder", choices=("ex0", "ex1"))
    p.add_argument("--n", type=int)
    p.add_argument("--file")
    p.add_argument("--cap", type=int, default=100_000)
    common(p)

    p = sub.add_parser("burnside", help="normal forms in B(k, n) for n <= 3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gens")
    p.add_argument("--word")
    p.add_argument("--enumerate", type=int, metavar="K", help="enumerate B(K, n)")
    common(p)
    return ap


COMMANDS = {"synt": cmd_synt, "check": cmd_check, "member": cmd_member, "survey": cmd_survey,
            "provable": cmd_provable, "present": cmd_present, "burnside": cmd_burnside}


def run(argv: list[str]) -> tuple[int, str, str]:
    """Run a command; returns ``(exit code, stdout text, stderr text)``."""
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("missing command; see --help")
        if hasattr(args, "budget"):
            args.budget = int(args.budget)
        np.random.seed(args.seed)  # nothing should depend on it, but keep runs reproducible
        inputs: dict[str, str] = {}
        payload, text = COMMANDS[args.command](args, inputs)
    except (UsageError, RegexError, TermError, PresentationError, OracleUnavailable, BurnsideError,
            D.DfaError, lang.LanguageError, ValueError) as exc:
        code = EXIT_BUDGET if isinstance(exc, lang.LanguageError) and "budget" in str(exc) else EXIT_USAGE
        return code, "", f"error: {exc}\n"
    except (BudgetExceeded, ElementCapExceeded, Undecided, MemoryError) as exc:
        return EXIT_BUDGET, "", f"budget exhausted: {exc}\n"
    except (AssertionError, MonoidError) as exc:
        return EXIT_INTERNAL, "", f"internal invariant breach: {exc}\n"
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0), "", ""
    millis = (time.perf_counter() - t0) * 1e3
    if args.json:
        report = {"command": list(argv),
                  "version": __version__, "seed": args.seed, "inputs": dict(sorted(inputs.items())),
                  "results": _strip_millis(payload), "millis": round(millis, 1)}
        return 0, json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n", ""
    return 0, text + f"\n(seed {args.seed}, {millis:.0f} ms)\n", ""


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not JSON serialisable: {type(o)}")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
