"""Batch command-line front end.

A job file (or bundled example) describes one algebra and its structure
blocks; commands run checks or constructions against it and the results
are written as a deterministic report: a JSON array of check entries
followed by a summary object, or the same data rendered as text.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 malformed
input or usage error.
"""

import argparse
import json
import os
import sys

from .envelope import (
    TripleEnvelope,
    build_envelope,
    check_lemma55,
    check_thm59,
    relation_instance_report,
)
from .errors import HgError, JobError
from .examples import builtin_job, builtin_listing
from .hopf_galois import (
    check_hopf,
    check_hopf_galois,
    galois_to_hopf,
    hopf_to_galois,
    pushforward,
)
from .jobs import KNOWN_COMMANDS, Job, load_job
from .ore import check_thm28, check_thm44, build_poisson_ore, extend_mu_ore
from .poisson import (
    PoissonHopfGaloisStructure,
    PoissonHopfStructure,
    check_poisson,
    check_poisson_hg,
    check_poisson_hopf,
    poisson_pushforward,
)
from .reports import element_terms_json, entry_to_json, tensor_terms_json


def _cmd_check_hopf_galois(job):
    return check_hopf_galois(job.hopf_galois()).entries, None


def _cmd_check_poisson(job):
    return check_poisson(job.poisson()).entries, None


def _cmd_check_poisson_hg(job):
    ph = PoissonHopfGaloisStructure(job.poisson(), job.hopf_galois())
    return check_poisson_hg(ph).entries, None


def _cmd_check_poisson_hopf(job):
    ph = PoissonHopfStructure(job.poisson(), job.hopf())
    return check_poisson_hopf(ph).entries, None


def _cmd_convert_hopf_to_galois(job):
    hs = job.hopf()
    entries = check_hopf(hs).entries
    result = None
    if all(e.passed for e in entries):
        hg = hopf_to_galois(hs)
        entries += check_hopf_galois(hg).entries
        result = {"mu": {
            atom: tensor_terms_json(img, job.field.render)
            for atom, img in sorted(hg.mu.images.items())
        }}
    return entries, result


def _cmd_convert_galois_to_hopf(job):
    hs = galois_to_hopf(job.hopf_galois(), job.alpha_map())
    entries = check_hopf(hs).entries
    render = job.field.render
    result = {
        "comultiplication": {
            atom: tensor_terms_json(img, render)
            for atom, img in sorted(hs.delta.images.items())
        },
        "counit": {
            atom: render(img.scalar())
            for atom, img in sorted(hs.counit.images.items())
        },
        "antipode": {
            atom: element_terms_json(img.to_element(), render)
            for atom, img in sorted(hs.antipode.images.items())
        },
    }
    return entries, result


def _cmd_check_thm28(job):
    data, g = job.ore_data()
    return check_thm28(data, job.hopf_galois(), g).entries, None


def _cmd_ore_extend(job):
    data, g = job.ore_data()
    hg = job.hopf_galois()
    entries = check_thm28(data, hg, g).entries
    result = None
    if all(e.passed for e in entries):
        extended = extend_mu_ore(data, hg, g)
        entries += check_hopf_galois(extended).entries
        result = {
            "presentation": repr(extended.presentation),
            "mu": {
                atom: tensor_terms_json(img, job.field.render)
                for atom, img in sorted(extended.mu.images.items())
            },
        }
    return entries, result


def _cmd_check_thm44(job):
    data, g = job.poisson_ore_data()
    ph = PoissonHopfGaloisStructure(data.base, job.hopf_galois())
    return check_thm44(data, ph, g).entries, None


def _cmd_poisson_ore_extend(job):
    data, _ = job.poisson_ore_data()
    extended = build_poisson_ore(data)
    entries = check_poisson(extended).entries
    render = job.field.render
    result = {
        "presentation": repr(extended.presentation),
        "bracket": [
            {"pair": [a, b], "value": element_terms_json(v, render)}
            for (a, b), v in sorted(extended.table.items())
        ],
    }
    return entries, result


def _cmd_build_envelope(job):
    env = build_envelope(job.poisson(), cap=job.envelope_cap())
    entries = relation_instance_report(env).entries
    result = {
        "source_dimension": len(env.basis),
        "generators": [g.name for g in env.presentation.generators],
        "rules": [repr(r) for r in env.presentation.rules],
    }
    return entries, result


def _cmd_check_lemma55(job):
    env = build_envelope(job.poisson(), cap=job.envelope_cap())
    words = job.lemma55_words(env.source.presentation)
    return check_lemma55(TripleEnvelope(env), words).entries, None


def _cmd_check_thm59(job):
    env = build_envelope(job.poisson(), cap=job.envelope_cap())
    ph = PoissonHopfGaloisStructure(job.poisson(), job.hopf_galois())
    return check_thm59(ph, env).entries, None


def _cmd_pushforward(job):
    f, section, ideal, _ = job.quotient()
    render = job.field.render
    if job.doc.get("bracket") is not None:
        ph = PoissonHopfGaloisStructure(job.poisson(), job.hopf_galois())
        pushed = poisson_pushforward(ph, f, section, ideal)
        entries = (check_hopf_galois(pushed.hopf_galois).entries
                   + check_poisson(pushed.poisson).entries
                   + check_poisson_hg(pushed).entries)
        result = {
            "mu": {
                atom: tensor_terms_json(img, render)
                for atom, img in sorted(pushed.hopf_galois.mu.images.items())
            },
            "bracket": [
                {"pair": [a, b], "value": element_terms_json(v, render)}
                for (a, b), v in sorted(pushed.poisson.table.items())
            ],
        }
    else:
        pushed = pushforward(job.hopf_galois(), f, section)
        entries = check_hopf_galois(pushed).entries
        result = {"mu": {
            atom: tensor_terms_json(img, render)
            for atom, img in sorted(pushed.mu.images.items())
        }}
    return entries, result


COMMANDS = {
    "check-hopf-galois": _cmd_check_hopf_galois,
    "check-poisson": _cmd_check_poisson,
    "check-poisson-hg": _cmd_check_poisson_hg,
    "check-poisson-hopf": _cmd_check_poisson_hopf,
    "convert hopf-to-galois": _cmd_convert_hopf_to_galois,
    "convert galois-to-hopf": _cmd_convert_galois_to_hopf,
    "ore-extend": _cmd_ore_extend,
    "check-thm28": _cmd_check_thm28,
    "poisson-ore-extend": _cmd_poisson_ore_extend,
    "check-thm44": _cmd_check_thm44,
    "build-envelope": _cmd_build_envelope,
    "check-lemma55": _cmd_check_lemma55,
    "check-thm59": _cmd_check_thm59,
    "pushforward": _cmd_pushforward,
}

assert set(COMMANDS) == set(KNOWN_COMMANDS)


def run_commands(job: Job, commands) -> tuple:
    """Execute commands in order; returns (entry dicts, summary dict)."""
    render = job.field.render
    all_entries = []
    results = {}
    for command in commands:
        entries, result = COMMANDS[command](job)
        for entry in entries:
            doc = {"command": command}
            doc.update(entry_to_json(entry, render))
            all_entries.append(doc)
        if result is not None:
            results[command] = result
    passed = sum(1 for e in all_entries if e["status"] == "pass")
    summary = {
        "job": job.name,
        "field": job.field.name,
        "commands": list(commands),
        "checks": len(all_entries),
        "passed": passed,
        "failed": len(all_entries) - passed,
        "status": "pass" if passed == len(all_entries) else "fail",
    }
    if results:
        summary["results"] = results
    return all_entries, summary


def render_json(entries, summary) -> str:
    return json.dumps(entries + [{"summary": summary}], indent=2, ensure_ascii=False) + "\n"


def render_text(entries, summary) -> str:
    lines = [f"job: {summary['job']} (field: {summary['field']})"]
    current = None
    for e in entries:
        if e["command"] != current:
            current = e["command"]
            lines.append(f"== {current} ==")
        status = "PASS" if e["status"] == "pass" else "FAIL"
        lines.append(f"  {status}  {e['check']} [{e['anchor']}] :: {e['subject']}")
        if e["status"] == "fail":
            witness = e.get("witness")
            if witness is not None:
                lines.append(f"        witness: {json.dumps(witness, ensure_ascii=False)}")
    lines.append(
        f"summary: {summary['checks']} checks, {summary['passed']} passed, "
        f"{summary['failed']} failed -> {summary['status'].upper()}"
    )
    if "results" in summary:
        lines.append("results:")
        lines.append(json.dumps(summary["results"], indent=2, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def _default_cap():
    """Optional environment override for every degree cap; never required."""
    value = os.environ.get("HGALOIS_CAP")
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise JobError("HGALOIS_CAP", f"not an integer: {value!r}")


def _load(args) -> Job:
    if args.builtin and args.input:
        raise JobError("usage", "give either --input or --builtin, not both")
    cap = args.cap if args.cap is not None else _default_cap()
    if args.builtin:
        job = Job(builtin_job(args.builtin), cap_override=cap)
    elif args.input:
        job = load_job(args.input, cap_override=cap)
    else:
        raise JobError("usage", "one of --input or --builtin is required")
    return job


def _emit(args, entries, summary) -> int:
    text = render_json(entries, summary) if args.format == "json" \
        else render_text(entries, summary)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"{summary['status']}: {summary['passed']}/{summary['checks']} checks "
              f"passed; report written to {args.report}")
    else:
        sys.stdout.write(text)
    return 0 if summary["status"] == "pass" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hgalois",
        description="Exact verification of Hopf-Galois and Poisson structures "
                    "on finitely presented algebras.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="job file (JSON)")
    common.add_argument("--builtin", metavar="NAME", help="bundled example job")
    common.add_argument("--report", metavar="PATH", help="write the report here")
    common.add_argument("--cap", type=int, default=None,
                        help="override every degree cap in the job")
    common.add_argument("--format", choices=("json", "text"), default="json")

    sub.add_parser("list-builtins", help="list bundled example jobs")
    sub.add_parser("run", parents=[common],
                   help="run the job's own command list")
    convert = sub.add_parser("convert", parents=[common],
                             help="convert between Hopf and Hopf-Galois data")
    convert.add_argument("direction", choices=("hopf-to-galois", "galois-to-hopf"))
    for name in sorted(COMMANDS):
        if name.startswith("convert "):
            continue
        sub.add_parser(name, parents=[common], help=f"run {name} on the job")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "list-builtins":
            for item in builtin_listing():
                print(f"{item['name']:22s}  [{item['anchor']}]  {item['description']}")
            return 0
        job = _load(args)
        if args.subcommand == "run":
            commands = job.commands
            if not commands:
                raise JobError(job.name, "job file has no commands")
        elif args.subcommand == "convert":
            commands = [f"convert {args.direction}"]
        else:
            commands = [args.subcommand]
        entries, summary = run_commands(job, commands)
        return _emit(args, entries, summary)
    except HgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
