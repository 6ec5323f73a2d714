"""Command-line interface: exact computations on chain documents, the
flat-norm solver, deformation experiments, and the verification runner.

Exact results are always printed as rational strings; Monte-Carlo estimates
are floats accompanied by their standard error.  Exit status: 0 on success,
1 when a verification suite reports a failure, 2 on input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import deform as DF
from . import docio
from . import flatnorm as FN
from . import slicing as SL
from . import verify as VF
from .chains import CoordChain
from .errors import FlatchainError, ValidationError
from .groups import Integers, Rationals, Residues
from .simplices import SimplexChain, grassmann_average
from .tensor import Split, TensorChain, bidegrees, chi, chi_tensor, jdecomp


def _emit(payload, fmt: str, fieldnames=None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    rows = payload if isinstance(payload, list) else [payload]
    if not rows:
        return
    fieldnames = fieldnames or list(rows[0])
    out = io.StringIO()
    w = csv.DictWriter(out, fieldnames=fieldnames)
    w.writeheader()
    for r in rows:
        w.writerow({k: r.get(k, "") for k in fieldnames})
    sys.stdout.write(out.getvalue())


def _parse_shift(text: str) -> tuple:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except ValueError as e:
        raise ValidationError(f"bad shift {text!r}: {e}") from e


def _parse_eps_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(p.strip()) for p in text.split(",")]
    except ValueError as e:
        raise ValidationError(f"bad scale list {text!r}: {e}") from e


def _coeff_obj(value) -> object:
    return docio.coeff_to_obj(value.group, value.payload)


def cmd_compute(args) -> int:
    chain = docio.load_chain(args.chain)
    which = args.which
    if which == "mass":
        if isinstance(chain, SimplexChain):
            _emit({"op": "mass", "value": float(chain.mass()),
                   "note": "simplicial mass; float of an exact-square sum"},
                  args.format)
        else:
            body = chain.body if isinstance(chain, TensorChain) else chain
            _emit({"op": "mass", "value": str(body.mass())}, args.format)
    elif which == "slicemass":
        if isinstance(chain, SimplexChain):
            _emit({"op": "slicemass", "value": str(chain.slicing_mass())},
                  args.format)
        elif isinstance(chain, TensorChain):
            _emit({"op": "slicemass", "value": str(SL.slicing_mass_tensor(chain))},
                  args.format)
        else:
            _emit({"op": "slicemass", "value": str(SL.slicing_mass(chain))},
                  args.format)
    elif which == "nnorm":
        if isinstance(chain, TensorChain):
            nn = FN.n_norm_tensor(chain)
        elif isinstance(chain, CoordChain):
            nn = FN.n_norm(chain)
        else:
            raise ValidationError("nnorm needs a coordinate or tensor chain")
        _emit({"op": "nnorm", "mass_based": str(nn.mass_based),
               "slicing_based": str(nn.slicing_based)}, args.format)
    elif which == "boundary":
        if isinstance(chain, TensorChain):
            raise ValidationError(
                "use jdecomp + slot boundaries for tensor chains")
        out = chain.boundary()
        doc = docio.chain_to_doc(out)
        if args.out:
            docio.save_chain(args.out, out)
            _emit({"op": "boundary", "written": args.out,
                   "terms": len(out.terms)}, args.format)
        else:
            print(docio.dumps(doc))
    elif which == "jdecomp":
        if isinstance(chain, TensorChain):
            chain = chain.body
        if not isinstance(chain, CoordChain):
            raise ValidationError("jdecomp needs a coordinate chain document")
        if not args.split:
            raise ValidationError("jdecomp needs --split n1,n2")
        n1, n2 = (int(v) for v in args.split.split(","))
        parts = jdecomp(chain, Split(n1, n2))
        payload = {"op": "jdecomp",
                   "components": [{"bidegree": list(bd),
                                   "mass": str(t.mass()),
                                   "document": docio.chain_to_doc(t)}
                                  for bd, t in sorted(parts.items())]}
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif which == "chi":
        if isinstance(chain, TensorChain):
            val = chi_tensor(chain)
        elif isinstance(chain, CoordChain):
            val = chi(chain)
        else:
            raise ValidationError("chi needs a coordinate or tensor chain")
        _emit({"op": "chi", "value": _coeff_obj(val)}, args.format)
    else:
        raise ValidationError(f"unknown computation {which!r}")
    return 0


def cmd_slicemass(args) -> int:
    chain = docio.load_chain(args.chain)
    if isinstance(chain, TensorChain):
        chain = chain.body
    if isinstance(chain, SimplexChain):
        raise ValidationError("per-family breakdown applies to coordinate chains")
    rows = [{"axes": "+".join(str(a) for a in axes), "value": str(v)}
            for axes, v in sorted(SL.slicing_mass_by_axes(chain).items())]
    rows.append({"axes": "total", "value": str(SL.slicing_mass(chain))})
    _emit(rows, args.format, fieldnames=["axes", "value"])
    return 0


def cmd_flatnorm(args) -> int:
    chain = docio.load_chain(args.chain)
    refinements = ([int(v) for v in args.sweep.split(",")]
                   if args.sweep else [args.refinement])
    rows = []
    witness_doc = None
    for r in refinements:
        if isinstance(chain, TensorChain):
            cx = FN.induced_complex([chain.body], margin=args.margin,
                                    refinement=r)
            w = FN.tensor_flat_norm_grid(chain, cx, args.backend)
            summary = {part: (str(t.mass()) if t is not None else None)
                       for part, t in w.parts().items()}
        elif isinstance(chain, CoordChain):
            cx = FN.induced_complex([chain], margin=args.margin, refinement=r)
            w = FN.flat_norm_grid(chain, cx, args.backend)
            summary = {"r": str(w.r.mass()), "s": str(w.s.mass())}
            if args.witness_out:
                witness_doc = {"r": docio.chain_to_doc(w.r),
                               "s": docio.chain_to_doc(w.s)}
        else:
            raise ValidationError("flat norm needs a coordinate or tensor chain")
        rows.append({"value": str(w.value), "refinement": r,
                     "backend": args.backend,
                     "witness": json.dumps(summary, sort_keys=True)})
    _emit(rows if len(rows) > 1 else rows[0], args.format,
          fieldnames=["value", "refinement", "backend", "witness"])
    if witness_doc is not None and args.witness_out:
        with open(args.witness_out, "w") as fh:
            json.dump(witness_doc, fh, indent=2, sort_keys=True)
    return 0


def cmd_deform(args) -> int:
    chain = docio.load_chain(args.chain)
    eps = Fraction(args.eps)
    body = chain.body if isinstance(chain, TensorChain) else chain
    if args.shift:
        shifts = [_parse_shift(args.shift)]
    else:
        import random
        rng = random.Random(args.seed)
        shifts = [DF.random_shift(rng, body.n, eps)
                  for _ in range(args.random_shifts)]
    rows = []
    out_chain = None
    for y in shifts:
        grid = DF.GridSpec(eps, y)
        if isinstance(chain, TensorChain):
            out = DF.deform_Pi0(chain, grid)
            mass = out.mass()
            out_chain = out
        else:
            out = DF.deform_P(chain, grid)
            mass = out.mass()
            out_chain = out
        rows.append({"shift": ",".join(str(v) for v in y),
                     "mass": str(mass),
                     "terms": len(out.terms if isinstance(out, CoordChain)
                                  else out.body.terms)})
    if args.out and out_chain is not None:
        docio.save_chain(args.out, out_chain)
    _emit(rows if len(rows) > 1 else rows[0], args.format,
          fieldnames=["shift", "mass", "terms"])
    return 0


def cmd_avg_deform(args) -> int:
    chain = docio.load_chain(args.chain)
    body = chain.body if isinstance(chain, TensorChain) else chain
    res = DF.shift_average_mass(body, Fraction(args.eps), args.mode,
                                samples=args.samples, seed=args.seed)
    if res.kind == "exact":
        _emit({"mode": "exact", "eps": args.eps, "value": str(res.value)},
              args.format)
    else:
        _emit({"mode": "montecarlo", "eps": args.eps, "mean": res.value,
               "stderr": res.stderr, "samples": res.samples}, args.format)
    return 0


def cmd_converge(args) -> int:
    chain = docio.load_chain(args.chain)
    body = chain.body if isinstance(chain, TensorChain) else chain
    rows = DF.convergence_experiment(body, _parse_eps_list(args.epsilons),
                                     samples=args.samples, seed=args.seed,
                                     refinement=args.refinement)
    _emit([{"eps": str(r.eps), "mean": r.mean, "stderr": r.stderr,
            "samples": r.samples} for r in rows], args.format,
          fieldnames=["eps", "mean", "stderr", "samples"])
    return 0


def cmd_cauchy(args) -> int:
    chain = docio.load_chain(args.chain)
    if not isinstance(chain, TensorChain):
        raise ValidationError("the dyadic refinement experiment needs a "
                              "tensor chain document")
    rows = DF.cauchy_experiment(chain, args.levels, _parse_shift(args.shift),
                                refinement=args.refinement)
    payload = [{"level": r.level, "eps": str(r.eps),
                "tensor_bound": str(r.tensor_bound),
                "chain_bound": str(r.chain_bound)} for r in rows]
    _emit(payload, args.format,
          fieldnames=["level", "eps", "tensor_bound", "chain_bound"])
    ratio = DF.fitted_ratio([r.tensor_bound for r in rows])
    if args.format == "json":
        print(json.dumps({"fitted_ratio": ratio}))
    else:
        print(f"# fitted_ratio,{ratio}")
    return 0


def _parse_descriptor(text: str):
    if text == "integers":
        return Integers()
    if text == "rationals":
        return Rationals()
    if text.startswith("residues:"):
        return Residues(int(text.split(":", 1)[1]))
    raise ValidationError(f"unknown descriptor {text!r}")


def cmd_counterexample(args) -> int:
    group = _parse_descriptor(args.descriptor)
    g = group.value(group.canon(
        Fraction(args.coeff) if isinstance(group, Rationals) else int(args.coeff)))
    bundle = DF.counterexample_build(g, args.j_max)
    payload = {
        "triangle_mass": str(bundle.triangle_mass),
        "staircase_slicing_masses": {str(j): str(v) for j, v in
                                     bundle.staircase_slicing_masses.items()},
        "prism_filling_masses": {str(j): str(v) for j, v in
                                 bundle.prism_masses.items()},
        "corner_anticommute": {str(j): v for j, v in
                               bundle.corner_anticommute.items()},
        "corner_certificates": {str(j): {"lo": str(c[0]), "hi": str(c[1]),
                                         "coefficient_norm": str(c[2])}
                                for j, c in bundle.corner_certificates.items()},
    }
    if args.out:
        for j, st in bundle.staircases.items():
            docio.save_chain(f"{args.out}/staircase_{j}.json", st,
                             name=f"staircase level {j}")
        payload["written"] = args.out
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_grassmann(args) -> int:
    chain = docio.load_chain(args.chain)
    if not isinstance(chain, SimplexChain) or len(chain.terms) != 1:
        raise ValidationError("rotation averaging needs a single-simplex document")
    s, _ = chain.terms[0]
    est = grassmann_average(s, args.samples, args.seed)
    _emit({"n": est.n, "k": est.k, "samples": est.samples,
           "estimate": est.mean, "stderr": est.stderr,
           "mass": est.mass, "ratio": est.ratio}, args.format,
          fieldnames=["n", "k", "samples", "estimate", "stderr", "mass", "ratio"])
    return 0


def cmd_verify(args) -> int:
    rows = VF.run_suite(args.suite, seed=args.seed)
    payload = [{"module": r.module, "check": r.name,
                "status": "pass" if r.passed else "FAIL",
                "detail": r.detail} for r in rows]
    _emit(payload, args.format, fieldnames=["module", "check", "status", "detail"])
    failures = sum(not r.passed for r in rows)
    if args.format == "json":
        print(json.dumps({"failures": failures, "checks": len(rows)}))
    else:
        print(f"# {len(rows) - failures}/{len(rows)} checks passed")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="flatchain",
        description="Exact polyhedral and tensor flat chains: boundary and "
                    "slicing calculus, grid deformation, flat-norm witnesses.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, chain=True):
        if chain:
            sp.add_argument("chain", help="chain document (JSON)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("compute", help="exact computations on one document")
    sp.add_argument("which", choices=("mass", "slicemass", "nnorm", "boundary",
                                      "jdecomp", "chi"))
    common(sp)
    sp.add_argument("--split", help="n1,n2 (jdecomp)")
    sp.add_argument("--out", help="output document path (boundary)")
    sp.set_defaults(fn=cmd_compute)

    sp = sub.add_parser("slicemass", help="per-plane-family slicing mass")
    common(sp)
    sp.set_defaults(fn=cmd_slicemass)

    sp = sub.add_parser("flatnorm", help="grid flat norm with witness")
    common(sp)
    sp.add_argument("--margin", type=Fraction, default=Fraction(0))
    sp.add_argument("--refinement", type=int, default=1)
    sp.add_argument("--backend", choices=("lp", "exhaustive"), default="lp")
    sp.add_argument("--sweep", help="comma list of refinements")
    sp.add_argument("--witness-out", help="write the witness chains here")
    sp.set_defaults(fn=cmd_flatnorm)

    sp = sub.add_parser("deform", help="project a chain onto a grid")
    common(sp)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--shift", help="comma-separated rational shift")
    sp.add_argument("--random-shifts", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="write the deformed chain here")
    sp.set_defaults(fn=cmd_deform)

    sp = sub.add_parser("avg-deform", help="shift-averaged deformed mass")
    common(sp)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--mode", choices=("exact", "montecarlo"), default="exact")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_avg_deform)

    sp = sub.add_parser("converge", help="deformation-to-identity experiment")
    common(sp)
    sp.add_argument("--epsilons", default="1,1/2,1/4,1/8")
    sp.add_argument("--samples", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--refinement", type=int, default=2)
    sp.set_defaults(fn=cmd_converge)

    sp = sub.add_parser("cauchy", help="dyadic refinement distances")
    common(sp)
    sp.add_argument("--levels", type=int, default=4)
    sp.add_argument("--shift", default="1/100,1/144")
    sp.add_argument("--refinement", type=int, default=2)
    sp.set_defaults(fn=cmd_cauchy)

    sp = sub.add_parser("counterexample", help="triangle staircase bundle")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--j-max", type=int, default=3)
    sp.add_argument("--coeff", default="1")
    sp.add_argument("--descriptor", default="integers")
    sp.add_argument("--out", help="directory for staircase documents")
    sp.set_defaults(fn=cmd_counterexample)

    sp = sub.add_parser("grassmann", help="rotation-averaged projection mass")
    common(sp)
    sp.add_argument("--samples", type=int, default=10 ** 4)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_grassmann)

    sp = sub.add_parser("verify", help="run the verification suites")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except FlatchainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
