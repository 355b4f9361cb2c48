"""``chainlab spectrum``: eigenvalues, optionally with eigenvectors and exact values."""

import argparse

import numpy as np

from chainlab.commands.common import emit, settings_from
from chainlab.config import Tolerances
from chainlab.models.spectrum import EigenPair, ExactEigenvalue, SpectrumReport
from chainlab.services.downer_service import confirmed_exact
from chainlab.services.exact_arith import exact_multiplicity
from chainlab.services.graph_core import Graph
from chainlab.services.graph_io import resolve_graphs
from chainlab.services.report_writer import render
from chainlab.services.spectra import graph_spectrum


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("spectrum", help="adjacency spectrum of each graph")
    parser.add_argument("graph", help="graph file or inline spec")
    parser.add_argument("--vectors", action="store_true",
                        help="attach the unit eigenvector of each simple eigenvalue")
    parser.add_argument("--exact-check", action="store_true",
                        help="confirm ℚ(√5) eigenvalues and their multiplicity exactly")
    parser.set_defaults(func=run)
    return parser


def spectrum_report(
    g: Graph, tol: Tolerances, *, vectors: bool = False, exact_check: bool = False
) -> SpectrumReport:
    s = graph_spectrum(g, tol)
    groups = []
    for group in s.clusters():
        lam = float(np.mean(s.eigenvalues[group]))
        pair = EigenPair(eigenvalue=lam, multiplicity=len(group))
        if vectors and len(group) == 1:
            pair.eigenvector = s.vector(group[0]).tolist()
        if exact_check:
            exact = confirmed_exact(g, lam, s.eigenvalues, tol)
            if exact is not None:
                pair.exact = ExactEigenvalue(value=exact, multiplicity=exact_multiplicity(g, exact))
        groups.append(pair)
    return SpectrumReport(
        graph=g.display_name,
        n=g.n,
        vertices=g.names(),
        eigenvalues=s.eigenvalues.tolist(),
        groups=groups,
    )


def run(args: argparse.Namespace) -> int:
    settings = settings_from(args)
    tol = settings.tolerances()
    reports = [
        spectrum_report(g, tol, vectors=args.vectors, exact_check=args.exact_check)
        for g in resolve_graphs(args.graph)
    ]
    emit(render(reports[0] if len(reports) == 1 else reports, settings.output_format), args)
    return 0
