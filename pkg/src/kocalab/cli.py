"""Batch front end.

Subcommands::

    check      every suite for the structure's own layer
    translate  koca2aks / aks2koca, optionally verifying the image
    tripos     tripos laws over index sets up to --index-size
    homega     L^omega adequacy, derivation checking and the PA axioms
    roundtrip  KOCA -> AKS -> KOCA isomorphism and tripos equivalence

Exit status: 0 when every check passes, 1 on a failed check, 2 on parse or
usage errors, 3 when an enumeration bound is exceeded.
"""

import argparse
import json
import sys
import time
from contextlib import contextmanager

from . import __version__, config, structfile
from .aks import AbstractKrivineStructure, check_aks_axioms, verify_aks_lemmas
from .errors import (
    DerivationError, EvaluationError, ParseError, ProperQuadrupleError, ResourceError,
    StructuralError,
)
from .koca import IOCA, KOCA, check_ioca, check_koca, double_negation_realizer, heyting_check
from .lattice import (
    RealizabilityLattice, closed_stack_sets_bruteforce, closure_stacks,
    enumerate_closed_stack_sets, full, perp_of_stacks, perp_of_terms,
)
from .oca import check_basic_combinators, check_oca, meet_top_check
from .report import Report
from .translations import (
    aks_to_koca, galois_check, koca_to_aks, order_iso_check, roundtrip_tripos_equivalence,
    streicher_iso_check,
)
from .tripos import tripos_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _u64(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _positive(text):
    v = _u64(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--structure", required=True,
                        help="structure file or boolean:n")
    common.add_argument("--report", help="write the JSON report here (default: stdout)")
    common.add_argument("--seed", type=_u64, default=config.DEFAULT_SEED)
    common.add_argument("--max-enum", type=_positive,
                        help="bound on |Pi| for closed-set enumeration")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock timings (makes reports run-dependent)")
    common.add_argument("--quiet", action="store_true", help="no summary on stderr")

    p = argparse.ArgumentParser(prog="kocalab", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"kocalab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run the structure's own suites")
    c.add_argument("--all-subsets", action="store_true",
                   help="AKS lemmas over all stack subsets instead of closed ones")

    t = sub.add_parser("translate", parents=[common], help="koca2aks or aks2koca")
    t.add_argument("--direction", choices=("aks2koca", "koca2aks"), required=True)
    t.add_argument("--verify", action="store_true", help="check the translated structure")
    t.add_argument("--output", help="write the translated structure as JSON")

    tr = sub.add_parser("tripos", parents=[common], help="tripos laws")
    tr.add_argument("--index-size", type=int, default=2)
    mode = tr.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true",
                      help="all pullback squares up to the index size (default)")
    mode.add_argument("--samples", type=int, default=None,
                      help="additional random pullback squares")

    h = sub.add_parser("homega", parents=[common], help="L^omega checks")
    h.add_argument("--interp", help="interpretation JSON file, zmod:n or truncated:n "
                                     "(default zmod:3)")
    h.add_argument("--check", dest="derivation", help="derivation file to check")
    h.add_argument("--pa", action="store_true", help="check the Peano axioms")
    h.add_argument("--depth", type=int, default=3, help="adequacy enumeration depth")

    r = sub.add_parser("roundtrip", parents=[common], help="KOCA -> AKS -> KOCA")
    r.add_argument("--index-size", type=int, default=2)
    r.add_argument("--samples", type=int, default=4096,
                   help="predicate pairs sampled when exhaustive is too large")
    return p


@contextmanager
def _caps(max_enum):
    saved = config.MAX_CLOSED_ENUM, config.MAX_BRUTE_FORCE
    if max_enum is not None:
        config.MAX_CLOSED_ENUM = max_enum
        config.MAX_BRUTE_FORCE = min(max_enum, config.MAX_BRUTE_FORCE)
    try:
        yield
    finally:
        config.MAX_CLOSED_ENUM, config.MAX_BRUTE_FORCE = saved


# suites per layer


def lattice_suite(lat):
    rep = Report("lattice", meta={"terms": len(lat.terms), "stacks": len(lat.stacks)})
    closed = enumerate_closed_stack_sets(lat)
    rep.meta["closed_stack_sets"] = len(closed)
    c = rep.add("enumeration-matches-bruteforce")
    c.count = len(closed)
    if len(lat.stacks) <= config.MAX_BRUTE_FORCE:
        brute = closed_stack_sets_bruteforce(lat)
        if brute != closed:
            c.fail({"enumerated": len(closed), "bruteforce": len(brute)})
    else:
        c.skipped = True
        c.detail = "above the brute-force bound"
    c = rep.add("closure-idempotent")
    for P in closed:
        c.count += 1
        if closure_stacks(lat, P) != P:
            c.fail({"set": P})
    c = rep.add("triple-perp")
    for P in range(1 << len(lat.stacks)) if len(lat.stacks) <= config.MAX_BRUTE_FORCE else closed:
        c.count += 1
        L = perp_of_stacks(lat, P)
        if perp_of_stacks(lat, perp_of_terms(lat, L)) != L:
            c.fail({"set": P})
    c = rep.add("top-and-bottom-closed")
    c.count = 1
    if closed and (closed[0] != full(len(lat.stacks))
                   or closed[-1] != closure_stacks(lat, 0)):
        c.fail({"first": closed[0], "last": closed[-1]})
    return rep


def algebra_suites(x):
    reps = [check_oca(x), check_basic_combinators(x), meet_top_check(x)]
    if isinstance(x, IOCA):
        reps += [check_ioca(x), heyting_check(x)]
    if isinstance(x, KOCA):
        reps += [check_koca(x), double_negation_realizer(x)]
    return reps


def aks_suites(aks, all_subsets=False):
    return [check_aks_axioms(aks), verify_aks_lemmas(aks, all_subsets=all_subsets)]


def _require(x, cls, what):
    if not isinstance(x, cls):
        raise StructuralError(f"this subcommand needs {what}, got {structfile.kind_of(x)}")


def cmd_check(x, args):
    if isinstance(x, RealizabilityLattice):
        return [lattice_suite(x)]
    if isinstance(x, AbstractKrivineStructure):
        return [lattice_suite(x.lat)] + aks_suites(x, args.all_subsets)
    return algebra_suites(x)


def cmd_translate(x, args):
    if args.direction == "koca2aks":
        _require(x, KOCA, "a koca")
        image = koca_to_aks(x)
        reps = aks_suites(image) if args.verify else []
    else:
        _require(x, AbstractKrivineStructure, "an aks")
        image = aks_to_koca(x)
        reps = []
        if args.verify:
            reps = [check_oca(image), check_ioca(image), check_koca(image), galois_check(image)]
    info = Report("translate", meta={
        "direction": args.direction,
        "image_kind": structfile.kind_of(image),
        "image_fingerprint": structfile.fingerprint(image),
    })
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(structfile.dumps(image))
    return [info] + reps


def cmd_tripos(x, args):
    _require(x, IOCA, "an ioca or koca")
    random_squares = 0 if args.samples is None else args.samples
    return [tripos_suite(x, args.index_size, config.make_rng(args.seed),
                         random_squares=random_squares)]


def cmd_roundtrip(x, args):
    _require(x, KOCA, "a koca")
    aks = koca_to_aks(x)
    back = aks_to_koca(aks)
    rng = config.make_rng(args.seed)
    return [
        check_koca(back),
        galois_check(x),
        order_iso_check(x),
        streicher_iso_check(aks, args.index_size, rng, args.samples),
        roundtrip_tripos_equivalence(x, args.index_size, rng, args.samples),
    ]


def cmd_homega(x, args):
    from . import homega as H

    _require(x, KOCA, "a koca")
    reps = []
    sig, context, derivation = H.pa_signature(), (), None
    if args.derivation:
        sig, context, derivation = H.parse_derivation_file(_read(args.derivation))
    interp = load_interpretation(x, args.interp, sig)
    if derivation is not None:
        rep = Report("derivation", meta={"file": args.derivation})
        c = rep.add("well-formed")
        c.count = 1
        try:
            seq = H.check_derivation(derivation, context)
        except DerivationError as err:
            c.fail({"error": str(err), "at": H.show_derivation(err.node) if err.node else None})
        else:
            rep.meta["sequent"] = str(seq)
            c = rep.add("satisfied")
            c.count = 1
            bad = H.counterexample(x, interp, seq)
            if bad is not None:
                c.fail(bad)
        reps.append(rep)
    if args.pa:
        reps.append(H.pa_axioms_check(x, interp, H.pa_signature()))
    if not reps:
        reps.append(H.adequacy_suite(x, interp, default_space(), args.depth))
    return reps


def default_space():
    """A small context over the PA signature that exercises all five rules."""
    from . import homega as H

    sig = H.pa_signature()
    sig.variables.update({"y": H.Arrow(H.I, H.O), "z": H.I, "P": H.O})
    ctx = (("h1", H.parse_expr("forall x:I. y x", sig)),
           ("h2", H.parse_expr("P => y 0", sig)))
    hyps = (H.parse_expr("P", sig), H.parse_expr("y 0", sig))
    terms = (H.parse_expr("0", sig), H.parse_expr("z", sig), H.parse_expr("succ z", sig))
    return H.DerivationSpace(ctx, hyps, terms, generalize=(("z", H.I),))


def _encode(interp, kind, value):
    from .homega import Arrow

    if isinstance(value, list):
        if not isinstance(kind, Arrow):
            raise StructuralError(f"table given for a value of base kind {kind}")
        if len(value) != interp.size(kind.src):
            raise StructuralError(f"table of length {len(value)} for kind {kind}")
        return interp.function(kind, lambda v: _encode(interp, kind.tgt, value[v]))
    if not isinstance(value, int) or not 0 <= value < interp.size(kind):
        raise StructuralError(f"value {value!r} outside [[{kind}]]")
    return value


def load_interpretation(koca, source, sig):
    """``zmod:n``, ``truncated:n`` or a JSON file.

    The JSON form is ``{"model": "zmod:3", "domains": {...}, "consts": {...}}``
    where a constant of arrow kind is a nested table indexed by its arguments.
    """
    from . import homega as H

    source = source or "zmod:3"
    obj = {"model": source} if source.split(":")[0] in ("zmod", "truncated") else None
    if obj is None:
        try:
            obj = json.loads(_read(source))
        except json.JSONDecodeError as err:
            raise ParseError(f"invalid JSON in {source}: {err.msg}", err.pos) from None
        if not isinstance(obj, dict):
            raise ParseError("interpretation must be a JSON object")
    model = obj.get("model")
    if model:
        name, _, size = model.partition(":")
        try:
            n = int(size or 3)
        except ValueError:
            raise ParseError(f"bad model {model!r}") from None
        if name not in ("zmod", "truncated") or n < 1:
            raise ParseError(f"bad model {model!r}")
        interp = (H.zmod_model if name == "zmod" else H.truncated_model)(koca, n)
    else:
        interp = H.Interpretation(koca, {})
    interp.domains.update(obj.get("domains", {}))
    for name, value in obj.get("consts", {}).items():
        if name not in sig.consts:
            raise StructuralError(f"constant {name!r} is not declared")
        interp.consts[name] = _encode(interp, sig.consts[name], value)
    interp._cache.clear()
    return interp


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None


COMMANDS = {
    "check": cmd_check,
    "translate": cmd_translate,
    "tripos": cmd_tripos,
    "homega": cmd_homega,
    "roundtrip": cmd_roundtrip,
}


def make_report(args, x, suites, timing=None):
    out = {
        "tool": "kocalab",
        "version": __version__,
        "command": args.command,
        "structure": {
            "source": args.structure,
            "kind": structfile.kind_of(x),
            "fingerprint": structfile.fingerprint(x),
        },
        "seed": args.seed,
        "caps": config.caps(),
        "passed": all(r.passed for r in suites),
        "suites": [r.to_dict() for r in suites],
    }
    if timing is not None:
        out["timing"] = timing
    return out


def _error_report(args, status, err):
    return {"tool": "kocalab", "version": __version__, "command": args.command,
            "passed": False, "exit": status, "error": f"{type(err).__name__}: {err}"}


def _emit(args, obj):
    text = json.dumps(obj, indent=2) + "\n"
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    with _caps(args.max_enum):
        try:
            t0 = time.perf_counter()
            x = structfile.load(args.structure)
            t1 = time.perf_counter()
            suites = COMMANDS[args.command](x, args)
            t2 = time.perf_counter()
        except (ParseError, StructuralError, ProperQuadrupleError, EvaluationError) as err:
            status, error = EXIT_USAGE, err
        except ResourceError as err:
            status, error = EXIT_RESOURCE, err
        else:
            timing = {"load_s": round(t1 - t0, 6), "run_s": round(t2 - t1, 6)} if args.timing else None
            report = make_report(args, x, suites, timing)
            _emit(args, report)
            if not args.quiet:
                for r in suites:
                    sys.stderr.write(f"[{'PASS' if r.passed else 'FAIL'}] {r.suite}\n")
                    for c in r.failures():
                        sys.stderr.write(f"    {c.name}: {json.dumps(c.to_dict().get('witness'))}\n")
            return EXIT_OK if report["passed"] else EXIT_FAIL
    sys.stderr.write(f"kocalab: {error}\n")
    _emit(args, _error_report(args, status, error))
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
