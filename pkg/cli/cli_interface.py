import sys
from typing import Any, Optional


class CLIInterface:
    """
    Console presentation of batches, sweeps and oracle results.
    Machine-readable reports never go through this class.
    """

    def __init__(self, terminal_width: int = 80, quiet: bool = False, stream=None):
        """
        Args:
            terminal_width: Width of separators and centered headers (default: 80)
            quiet: suppress everything except errors
            stream: output stream (default: stdout at call time)
        """
        self.terminal_width = terminal_width
        self.quiet = quiet
        self._stream = stream

    @property
    def stream(self):
        return self._stream if self._stream is not None else sys.stdout

    def _print(self, text: str = "") -> None:
        if not self.quiet:
            print(text, file=self.stream)

    def _render_header(self, title: str) -> None:
        separator = "=" * self.terminal_width
        self._print(separator)
        self._print(title.center(self.terminal_width))
        self._print(separator)

    @staticmethod
    def _fmt(value: Any) -> str:
        if value is None:
            return "n/a"
        if isinstance(value, float):
            return f"{value:.4g}"
        return str(value)

    def progress_enabled(self) -> bool:
        """tqdm bars only on an interactive stderr and when not quiet."""
        return not self.quiet and sys.stderr.isatty()

    def show_batch_header(self, run_config, source: str, graph) -> None:
        self._render_header(f"{run_config.command} on {source}")
        self._print(f"n={graph.n} m={graph.m} max degree={graph.max_degree}  "
                    f"C={self._fmt(run_config.C)} trials={run_config.trials} "
                    f"seed={run_config.seed} ({run_config.seed_source})")

    def show_match_summary(self, report: dict) -> None:
        batch = report["batch"]
        percentiles = batch.get("energy_percentiles") or {}
        self._print(f"completed trials:      {batch['completed_trials']}/{len(report['trials'])}")
        self._print(f"maximality rate:       {self._fmt(batch['maximality_rate'])}")
        self._print(f"validity violations:   {batch['validity_violations']}")
        self._print(f"energy p50/p90/p99/max: "
                    + "/".join(self._fmt(percentiles.get(k)) for k in ("p50", "p90", "p99", "max")))
        self._print(f"energy bound:          {self._fmt(batch['energy_bound'])} "
                    f"({'ok' if batch['energy_bound_ok'] else 'EXCEEDED'})")
        self._print(f"latency exact:         {batch['latency_ok']}")
        if batch.get("two_approx_ok") is not None:
            self._print(f"2-approximation:       {batch['two_approx_ok']}")
        if batch.get("handshake_problems") is not None:
            self._print(f"handshake problems:    {batch['handshake_problems']}")
        self._show_duplicate_ids(batch)

    def show_naf_summary(self, report: dict) -> None:
        batch = report["batch"]
        self._print(f"completed trials:      {batch['completed_trials']}/{len(report['trials'])}")
        self._print(f"full coverage rate:    {self._fmt(batch['full_coverage_rate'])}")
        self._print(f"mean load:             {self._fmt(batch['mean_load'])}")
        self._print(f"load <= k+1:           {batch['load_bound_ok']}")
        curve = batch.get("mean_uncovered_curve")
        if curve:
            shown = ", ".join(self._fmt(x) for x in curve[:8])
            more = ", ..." if len(curve) > 8 else ""
            self._print(f"mean uncovered:        [{shown}{more}]")
        self._show_duplicate_ids(batch)

    def _show_duplicate_ids(self, batch: dict) -> None:
        if batch.get("duplicate_id_trials"):
            self._print(f"duplicate wire ids:    {batch['duplicate_id_trials']} trials")

    def show_sweep_summary(self, report: dict) -> None:
        self._render_header(f"sweep {report['config']['generator']}")
        columns = ("n", "C", "maximality_rate", "max_energy", "energy_bound_ratio", "total_timesteps")
        self._print("  ".join(f"{c:>18}" for c in columns))
        for row in report["cells"]:
            self._print("  ".join(f"{self._fmt(row[c]):>18}" for c in columns))

    def show_oracle_result(self, title: str, values: dict[str, Any],
                           verdict: Optional[str] = None) -> None:
        self._render_header(title)
        width = max((len(k) for k in values), default=0)
        for key, value in values.items():
            self._print(f"{key.ljust(width)}  {self._fmt(value)}")
        if verdict:
            self._print(verdict)

    def show_saved(self, path) -> None:
        self._print(f"\nSaved report to: {path}")
