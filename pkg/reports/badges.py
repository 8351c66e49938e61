"""Shields.io endpoint badges: one per outcome type and one per OWL profile."""

import json
import logging
from pathlib import Path
from typing import Dict, List, Mapping, Tuple, Union

from suites.config import LintConfig
from reports.context import Statistics

logger = logging.getLogger(__name__)

Badge = Tuple[str, Dict[str, object]]


def outcome_badge(name: str, count: int) -> Badge:
    color = LintConfig.BADGE_OK_COLOR if count == 0 else LintConfig.BADGE_COLORS[name]
    return name, {"schemaVersion": 1, "label": name, "message": str(count), "color": color}


def profile_badge(profile: str, compatible: bool) -> Badge:
    return f"profile-{profile}", {
        "schemaVersion": 1,
        "label": f"OWL 2 {profile}",
        "message": "compatible" if compatible else "incompatible",
        "color": LintConfig.BADGE_OK_COLOR if compatible else LintConfig.BADGE_COLORS["MajorFail"],
    }


def emit_badges(stats: Statistics, profile_results: Mapping[str, bool]) -> List[Badge]:
    badges = [outcome_badge(name, stats.count(name)) for name in LintConfig.OUTCOME_ORDER]
    badges += [profile_badge(str(profile), profile_results[profile]) for profile in sorted(profile_results)]
    return badges


def write_badges(badges: List[Badge], directory: Union[str, Path]) -> List[Path]:
    """Write one <name>.json endpoint document per badge"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, document in badges:
        path = directory / f"{name}.json"
        with open(path, 'w') as f:
            json.dump(document, f, indent=2)
        written.append(path)
    logger.info("Wrote %d badges to %s", len(written), directory)
    return written
