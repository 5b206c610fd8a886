"""Cross-validate every closed form against independent numerics.

Each analytic ingredient of the library has an independent evaluation
route: circle moments vs odd-harmonic sums, cross-circle moments vs
hypergeometric values, mode-matrix determinants vs their quadratic in the
shifted spectral variable, and the discretized linearization vs the
analytic frequency blocks.  This script runs the whole oracle suite and
prints the report table (the same suite backs ``vstates check``).

Run:  python demos/02_oracle_checks.py
"""

from sqg_vstates.verify import format_report_table, run_default_suite

reports = run_default_suite()
print(format_report_table(reports))

failed = [r.name for r in reports if not r.passed]
if failed:
    raise SystemExit(f"oracle checks failed: {failed}")
print(f"\nall {len(reports)} oracle checks passed")
