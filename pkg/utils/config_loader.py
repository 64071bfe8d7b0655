"""
Scenario Loader

Utilities for loading, validating and saving scenario files and reports.
Scenario files are YAML (extension .scn, .yaml or .yml).
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from pydantic import ValidationError

from coding.errors import ScenarioError
from models.scenario import ScenarioConfig

logger = logging.getLogger(__name__)

SCENARIO_SUFFIXES = ('.scn', '.yaml', '.yml')


def load_yaml_file(path: str) -> Dict[str, Any]:
    """
    Load a YAML mapping from file

    Args:
        path: Path to the YAML file

    Returns:
        Parsed dictionary

    Raises:
        ScenarioError: If the file is missing, malformed or not a mapping
    """
    file_path = Path(path)
    if not file_path.exists():
        raise ScenarioError(f"Scenario file not found: {path}")

    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        logger.error(f"Invalid YAML in {path}: {str(e)}")
        raise ScenarioError(f"Invalid YAML in {path}: {str(e)}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ScenarioError(f"{path} must contain a mapping, got {type(data).__name__}")

    logger.debug(f"Loaded {path}: {len(data)} keys")
    return data


def _format_validation_error(error: ValidationError) -> List[str]:
    messages = []
    for item in error.errors():
        location = '.'.join(str(part) for part in item['loc']) or 'scenario'
        messages.append(f"{location}: {item['msg']}")
    return messages


def validate_scenario(data: Dict[str, Any]) -> Tuple[bool, List[str]]:
    """
    Validate a scenario dictionary against ScenarioConfig

    Returns:
        Tuple of (is_valid, list of violated constraints)
    """
    try:
        ScenarioConfig.model_validate(data)
    except ValidationError as e:
        errors = _format_validation_error(e)
        logger.warning(f"Scenario validation failed: {errors}")
        return False, errors
    return True, []


def load_scenario(path: str, seed_override: Optional[int] = None) -> ScenarioConfig:
    """
    Load and validate a scenario file

    Args:
        path: Scenario file path
        seed_override: Replaces the scenario's seed when given

    Returns:
        Validated ScenarioConfig
    """
    data = merge_configs(load_yaml_file(path), get_env_config('RANKSTORE_SCENARIO_'))
    data.setdefault('name', Path(path).stem)
    if seed_override is not None:
        data['seed'] = seed_override

    try:
        scenario = ScenarioConfig.model_validate(data)
    except ValidationError as e:
        raise ScenarioError(f"{path}: " + '; '.join(_format_validation_error(e))) from e

    logger.info(f"Loaded scenario '{scenario.name}' with {len(scenario.events)} events")
    return scenario


def merge_configs(
    *configs: Dict[str, Any],
    deep_merge: bool = True
) -> Dict[str, Any]:
    """
    Merge multiple configuration dictionaries

    Later configs override earlier ones.

    Args:
        *configs: Configuration dictionaries to merge
        deep_merge: Whether to deeply merge nested dictionaries

    Returns:
        Merged configuration dictionary
    """
    if not configs:
        return {}

    result = configs[0].copy()
    for config in configs[1:]:
        if deep_merge:
            result = _deep_merge(result, config)
        else:
            result.update(config)
    return result


def _deep_merge(dict1: dict, dict2: dict) -> dict:
    result = dict1.copy()

    for key, value in dict2.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = value

    return result


def get_env_config(prefix: str = 'RANKSTORE_SCENARIO_') -> Dict[str, Any]:
    """
    Scenario overrides from environment variables

    RANKSTORE_SCENARIO_Q=5 becomes {'q': 5}; values are parsed as JSON when
    possible so nested sections can be overridden too.
    """
    overrides = {}

    for key, value in os.environ.items():
        if key.startswith(prefix):
            config_key = key[len(prefix):].lower()
            try:
                overrides[config_key] = json.loads(value)
            except json.JSONDecodeError:
                overrides[config_key] = value

    if overrides:
        logger.info(f"Applying {len(overrides)} scenario overrides from environment: {sorted(overrides)}")
    return overrides


def list_scenarios(directory: str) -> List[Path]:
    """Scenario files in a directory, sorted by name"""
    root = Path(directory)
    if not root.is_dir():
        raise ScenarioError(f"Scenario directory not found: {directory}")
    return sorted(p for p in root.iterdir() if p.suffix in SCENARIO_SUFFIXES)


def dump_yaml(data: Dict[str, Any]) -> str:
    """YAML text with the mapping's own key order"""
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=False, width=120)


def save_report(
    data: Dict[str, Any],
    report_path: str,
    report_type: str = 'yaml'
):
    """
    Save a report dictionary to file

    Args:
        data: Report dictionary
        report_path: Destination path
        report_type: 'yaml' or 'json'
    """
    report_file = Path(report_path)
    report_file.parent.mkdir(parents=True, exist_ok=True)

    if report_type == 'yaml':
        report_file.write_text(dump_yaml(data), encoding='utf-8')
    elif report_type == 'json':
        report_file.write_text(json.dumps(data, indent=2) + '\n', encoding='utf-8')
    else:
        raise ValueError(f"Unsupported report type for saving: {report_type}")

    logger.info(f"Saved report to {report_path}")
