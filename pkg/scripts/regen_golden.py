"""Rewrite the golden outputs of the worked CLI examples.

Run only after checking a behaviour change by hand; the golden test
exists to catch unintended drift.
"""
import io
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from fqlinear.cli import run  # noqa: E402
from tests.golden_cases import CASES, GOLDEN_DIR, MODEL_SERIES, resolve  # noqa: E402


def main():
    GOLDEN_DIR.mkdir(exist_ok=True)
    model = CASES["solve_model_x1"] + ["--output", str(GOLDEN_DIR / MODEL_SERIES)]
    if run(model, io.StringIO(), io.StringIO()) != 0:
        raise SystemExit("model example failed")
    for name, argv in CASES.items():
        out, err = io.StringIO(), io.StringIO()
        code = run(resolve(argv), out, err)
        if code != 0:
            raise SystemExit(f"{name}: exit {code}: {err.getvalue()}")
        (GOLDEN_DIR / f"{name}.out").write_text(out.getvalue())
        print(f"wrote {name}.out")


if __name__ == "__main__":
    main()
