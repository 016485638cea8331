"""
Command-line interface for the gradings toolkit.

Subcommands:
    construct  build the model of a parameter document and dump it
    verify     run structural checks on a dump or a parameter document
    iso        decide whether two parameter documents are isomorphic
    census     list the isomorphism classes of a family over a finite group
    skew       dump the Lie superalgebra of skew elements

Artifacts go to stdout (or --out) as JSON; logs and banners go to stderr.
"""

import argparse
import json
import logging
import os
import sys
from logging.handlers import RotatingFileHandler

import config
from abelian import FinAbGroup
from algebra import is_graded_simple
from classifier import decide, enumerate_census
from division import verify_division
from forms import is_involution_simple, superadjunction
from interchange import (
    algebra_record,
    census_record,
    dumps,
    lie_record,
    load_dump,
    parse_params,
    parse_phi,
    verify_record,
)
from lie import Simplicity, build_lie, is_graded_simple_lie, skew, verify_lie_axioms
from params import LieParams, build_model
from validation import (
    GradingError,
    ParseError,
    validate_check_list,
    validate_group_spec,
)

logger = logging.getLogger('gradings')


def setup_logging():
    """Configure the `gradings` logger (console, optional rotating file)."""
    logger.setLevel(getattr(logging, config.LOG_LEVEL, logging.WARNING))
    if logger.handlers:
        return logger

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(
        '%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    ))
    logger.addHandler(console_handler)

    if config.LOG_TO_FILE:
        os.makedirs(config.LOG_DIR, exist_ok=True)
        file_handler = RotatingFileHandler(
            os.path.join(config.LOG_DIR, 'gradings.log'),
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5
        )
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        ))
        logger.addHandler(file_handler)

    return logger


class UsageError(GradingError):
    """Bad command-line usage."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(config.EXIT_USAGE)


def _read(path):
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _write(text, path=None):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, 'w') as f:
        f.write(text)
    logger.info(f"Wrote {path}")


def _is_dump(text):
    return text.lstrip().startswith('{')


# Subcommands

def cmd_construct(args):
    params = parse_params(_read(args.params))
    family = params.family
    if family != args.family:
        raise UsageError(f"--family {args.family} does not match document family {family}")
    if isinstance(params, LieParams):
        L = build_lie(params)
        record = lie_record(L)
        logger.info(f"Built {L.name}: dim {L.dim}")
    else:
        model = build_model(params)
        record = algebra_record(model)
        logger.info(f"Built {model.algebra.name}: dim {model.algebra.dim}")
    _write(dumps(record), args.out)
    return config.EXIT_OK


def _load_subject(path):
    """(kind, object, involution, division) of a dump or parameter document."""
    text = _read(path)
    if _is_dump(text):
        loaded = load_dump(text)
        if not isinstance(loaded, tuple):
            return 'lie', loaded, None, None
        algebra, involution = loaded
        return 'associative', algebra, involution, None
    params = parse_params(text)
    if isinstance(params, LieParams):
        return 'lie', build_lie(params), None, None
    model = build_model(params)
    return 'associative', model.algebra, model.involution, model.division


def _run_check(name, kind, subject, involution, division):
    if kind == 'lie':
        if name == 'grading':
            return subject.check_grading()
        if name == 'jacobi':
            report = verify_lie_axioms(subject)
            for check in ('anticommutativity', 'jacobi'):
                ok, message = report[check]
                if not ok:
                    return False, message
            return True, None
        if name == 'simplicity':
            verdict = is_graded_simple_lie(subject)
            if verdict is Simplicity.FALSE:
                return False, "proper graded ideal found"
            return True, None if verdict is Simplicity.TRUE else "probably simple (randomized)"
        raise UsageError(f"check '{name}' does not apply to a Lie superalgebra")

    if name == 'grading':
        return subject.check_grading()
    if name == 'associativity':
        return subject.check_associativity()
    if name == 'division':
        target = subject if division is None else division.as_algebra()
        if division is not None:
            ok, message = division.check_cocycle()
            if not ok:
                return False, message
        if not verify_division(target):
            return False, "a homogeneous element is not invertible"
        return True, None
    if name == 'simplicity':
        if involution is not None and involution.kind == 'exchange':
            ok = is_involution_simple(subject, involution)
            return ok, None if ok else "not graded-simple with superinvolution"
        ok = is_graded_simple(subject)
        return ok, None if ok else "not graded-simple"
    if name == 'superinvolution':
        if involution is None:
            return False, "no superinvolution recorded"
        return involution.check()
    raise UsageError(f"check '{name}' does not apply to an associative superalgebra")


DEFAULT_CHECKS = {
    'associative': ('grading', 'associativity', 'simplicity', 'superinvolution'),
    'lie': ('grading', 'jacobi', 'simplicity'),
}


def cmd_verify(args):
    kind, subject, involution, division = _load_subject(args.file)
    if args.checks:
        is_valid, error = validate_check_list(args.checks)
        if not is_valid:
            raise UsageError(error)
        checks = [name.strip() for name in args.checks.split(',') if name.strip()]
    else:
        checks = list(DEFAULT_CHECKS[kind])
        if kind == 'associative' and involution is None:
            checks.remove('superinvolution')

    results = {name: _run_check(name, kind, subject, involution, division) for name in checks}
    record = verify_record(results)
    _write(dumps(record))
    if not record['passed']:
        failed = [name for name, (ok, _) in results.items() if not ok]
        logger.warning(f"Verification failed: {', '.join(failed)}")
        return config.EXIT_VERIFICATION
    return config.EXIT_OK


def cmd_iso(args):
    p = parse_params(_read(args.first))
    q = parse_params(_read(args.second))
    result = decide(p, q)
    logger.info(f"iso: {result.isomorphic} ({result.reason})")
    _write(dumps(result.to_record()))
    return config.EXIT_OK


def cmd_census(args):
    is_valid, error = validate_group_spec(args.group)
    if not is_valid:
        raise ParseError(error, field='group')
    group = FinAbGroup.parse(args.group)

    print("=" * 60, file=sys.stderr)
    print(f"Census: family {args.family}, group {group}, dim {args.dim}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)

    classes = enumerate_census(args.family, group, args.dim)
    _write(dumps(census_record(args.family, group, args.dim, classes)))

    print(f"✓ {len(classes)} class(es)", file=sys.stderr)
    return config.EXIT_OK


def _phi_from_file(path, group):
    try:
        record = json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno, field='phi')
    if isinstance(record, dict) and 'phi' in record:
        record = record['phi']
    if not isinstance(record, dict):
        raise ParseError("expected a form record", field='phi')
    return parse_phi(record, group)


def cmd_skew(args):
    text = _read(args.file)
    if _is_dump(text):
        if args.phi:
            raise UsageError("--phi needs a parameter document (the dump has no division algebra)")
        loaded = load_dump(text)
        if not isinstance(loaded, tuple) or loaded[1] is None:
            raise UsageError(f"{args.file} records no superinvolution")
        algebra, involution = loaded
    else:
        params = parse_params(text)
        if isinstance(params, LieParams):
            params = params.inner
        model = build_model(params)
        algebra, involution = model.algebra, model.involution
        if args.phi:
            phi = _phi_from_file(args.phi, algebra.group)
            eta = params.active_eta() if hasattr(params, 'active_eta') else None
            involution = superadjunction(algebra, phi, eta)
        if involution is None:
            raise UsageError(f"{params.family} models carry no superinvolution; pass --phi")

    L = skew(algebra, involution)
    logger.info(f"Skew elements: dim {L.dim}")
    _write(dumps(lie_record(L)))
    return config.EXIT_OK


def build_parser():
    parser = _Parser(prog='gradings', description='Gradings on simple superalgebras')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    construct = sub.add_parser('construct', help='Build the model of a parameter document')
    construct.add_argument('--family', required=True, choices=sorted(config.FAMILIES))
    construct.add_argument('--params', required=True, help='Parameter document')
    construct.add_argument('--out', help='Output file (default: stdout)')
    construct.set_defaults(handler=cmd_construct)

    verify = sub.add_parser('verify', help='Check a dump or a parameter document')
    verify.add_argument('file')
    verify.add_argument('--checks', help=f"Comma separated subset of: {', '.join(config.CHECKS)}")
    verify.set_defaults(handler=cmd_verify)

    iso = sub.add_parser('iso', help='Decide isomorphism of two parameter documents')
    iso.add_argument('first')
    iso.add_argument('second')
    iso.set_defaults(handler=cmd_iso)

    census = sub.add_parser('census', help='Enumerate isomorphism classes')
    census.add_argument('--family', required=True, choices=sorted(config.FAMILIES))
    census.add_argument('--group', required=True, help="Group spec like 'Z2 x Z4'")
    census.add_argument('--dim', required=True, type=int, help='Target dimension')
    census.set_defaults(handler=cmd_census)

    skew_cmd = sub.add_parser('skew', help='Skew elements of a superinvolution')
    skew_cmd.add_argument('file', help='Dump with a superinvolution, or a parameter document')
    skew_cmd.add_argument('--phi', help='Form record (JSON) to use instead of the model form')
    skew_cmd.set_defaults(handler=cmd_skew)

    return parser


def main(argv=None):
    setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except GradingError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
