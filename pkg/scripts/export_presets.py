"""
Write the bundled presets as YAML run configurations.

    python scripts/export_presets.py configs/
    python main.py sweep --config-dir configs --out runs
"""
import sys
from pathlib import Path

import yaml

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.runs.presets import PRESETS, preset_mapping  # noqa: E402


def export_presets(target: Path) -> list[Path]:
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name in PRESETS:
        path = target / f"{name}.yaml"
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(preset_mapping(name), f, sort_keys=False)
        written.append(path)
    return written


if __name__ == "__main__":
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("configs")
    for path in export_presets(out):
        print(f"wrote {path}")
