"""Total variation of the learned sheaf vs a plain graph construction.

Generates correlated subspace data on 16 nodes, denoises it at a few
regularization strengths, infers the topology with and without restriction-map
alignment, and plots TV as a function of the edge budget. The aligned curve
sits below the baseline at every point because the identity map is always a
feasible (but rarely optimal) alignment.
"""

from pathlib import Path

from sheaflearn import SweepSpec, emit_plots, run_tv_sweep

out = Path("demo_out/sweep")
out.mkdir(parents=True, exist_ok=True)

spec = SweepSpec(
    alpha_grid=(0.1, 0.5, 1.0),
    snr_grid=(10.0, 20.0),
    seed=0,
    # e0_grid=None sweeps from the connectivity minimum to the complete graph
)
report = run_tv_sweep(spec)
report.to_csv(out / "report.csv")
paths = emit_plots(report, out)

print(f"{len(report.rows)} report rows -> {out / 'report.csv'}")
for p in paths:
    print(f"panel: {p}")

# spot check: dominance of the aligned construction
tv = {(r.mode, r.alpha, r.snr_db, r.e0): r.total_variation for r in report.rows}
gaps = [tv[("baseline", a, s, e)] - v
        for (m, a, s, e), v in tv.items() if m == "aligned"]
print(f"aligned below baseline at all {len(gaps)} grid points: {min(gaps) >= 0}")
