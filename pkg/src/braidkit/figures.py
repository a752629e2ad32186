"""Matplotlib rendering of report data to files.

Charts accompany the delimited output when the CLI is invoked with a figure
directory; they carry no information beyond the JSON report.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams.update({
    "figure.figsize": (6.0, 3.7),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
})

PASS_COLOR = "#2a7e43"
FAIL_COLOR = "#b13a2f"
BAR_COLOR = "#3a6ea5"


def save_dims_chart(dims: list[int], title: str, path: str) -> None:
    """Bar chart of component dimensions per degree."""
    fig, ax = plt.subplots()
    ax.bar(range(len(dims)), dims, color=BAR_COLOR)
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_xticks(range(len(dims)))
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_verdict_chart(items: list[tuple[str, bool | None]], title: str, path: str) -> None:
    """Horizontal pass/fail bars (grey for unasserted verdicts)."""
    fig, ax = plt.subplots(figsize=(6.0, 0.5 + 0.4 * max(len(items), 1)))
    labels = [name for name, _ in items]
    colors = [PASS_COLOR if ok else (FAIL_COLOR if ok is False else "#888888")
              for _, ok in items]
    ax.barh(range(len(items)), [1] * len(items), color=colors)
    ax.set_yticks(range(len(items)))
    ax.set_yticklabels(labels)
    ax.set_xticks([])
    ax.invert_yaxis()
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_figures(command: str, doc: dict, outdir: str) -> list[str]:
    """Write the charts a report supports; returns the file names created."""
    os.makedirs(outdir, exist_ok=True)
    created: list[str] = []

    def emit_dims(dims: list[int], tag: str) -> None:
        name = f"{command}_{tag}_dims.png"
        save_dims_chart(dims, f"{tag} dimensions by degree", os.path.join(outdir, name))
        created.append(name)

    def emit_verdicts(items: list[tuple[str, bool | None]], tag: str) -> None:
        name = f"{command}_{tag}_verdicts.png"
        save_verdict_chart(items, tag, os.path.join(outdir, name))
        created.append(name)

    if "dims" in doc and _all_int(doc["dims"]):
        emit_dims(doc["dims"], doc.get("object", command))
    if "grU_dims" in doc and _all_int(doc.get("grU_dims")):
        emit_dims(doc["grU_dims"], "grU")
    if command == "verify":
        if "suite" in doc:
            emit_verdicts(
                [(entry["name"], entry.get("matches_expectation")) for entry in doc["suite"]],
                "suite")
        elif "hypotheses" in doc:
            items: list[tuple[str, bool | None]] = [
                (f"hyp {h['name']}", h["verdict"]) for h in doc["hypotheses"]]
            items.append(("conclusion", doc.get("conclusion", {}).get("verdict")))
            emit_verdicts(items, doc.get("theorem", "theorem"))
    if command == "validate" and "tensor_axioms" in doc and doc["tensor_axioms"]:
        axioms = doc["tensor_axioms"].get("axioms", {})
        if axioms:
            emit_verdicts(sorted(axioms.items()), "axioms")
    return created


def _all_int(value) -> bool:
    return isinstance(value, list) and all(isinstance(v, int) for v in value)
