"""Order-by-order embedding extension for deformation families.

Thin convenience layer over the compiled module: every heavy operation runs in
C++ on exact rationals; this side only decodes the JSON reports.
"""

import json

from ._core import certify, fixture_json, fixture_names, run, validate

__all__ = [
    "certify",
    "fixture_json",
    "fixture_names",
    "run",
    "validate",
    "validate_report",
    "run_report",
    "certify_report",
]


def validate_report(cover_json):
    """validate() with the report decoded into a dict."""
    result = validate(cover_json)
    return json.loads(result["report"])


def run_report(cover_json, order, psi_degree=None):
    """run() with the report decoded into a dict."""
    result = run(cover_json, order, psi_degree)
    return json.loads(result["report"])


def certify_report(cover_json, order, a=None, b=None, rho=None, psi_degree=None):
    """certify() with the report decoded into a dict."""
    result = certify(cover_json, order, a, b, rho, psi_degree)
    return json.loads(result["report"])
