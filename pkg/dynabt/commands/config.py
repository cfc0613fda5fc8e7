"""Config Command - Inspect and edit the settings file"""

import json
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Dict, Optional

from .base import BaseCommand
from ..errors import ConfigError
from ..manager import DEFAULT_CONFIG, SolverManager


class ConfigCommand(BaseCommand):
    """Show or edit the settings file (solver, oracle, bench, logging)"""

    @property
    def name(self) -> str:
        return 'config'

    @property
    def help(self) -> str:
        return 'Show or modify app-level configuration'

    def add_arguments(self, parser: ArgumentParser) -> None:
        subparsers = parser.add_subparsers(dest='config_subcommand', help='Config operations')

        subparsers.add_parser('show', help='Show current app configuration')

        get_parser = subparsers.add_parser('get', help='Get a configuration value')
        get_parser.add_argument('key', help='Config key (e.g., solver.algorithm)')

        set_parser = subparsers.add_parser('set', help='Set a configuration value')
        set_parser.add_argument('key', help='Config key (e.g., bench.jobs)')
        set_parser.add_argument('value', help='New value (parsed as JSON, else taken as a string)')

    def requires_manager(self) -> bool:
        return False

    def execute(self, args: Namespace, manager: Optional[SolverManager]) -> int:
        config_file = Path(args.config)
        subcommand = args.config_subcommand or 'show'

        if subcommand == 'show':
            return self._show_config(config_file)
        elif subcommand == 'get':
            return self._get_config(config_file, args.key)
        elif subcommand == 'set':
            return self._set_config(config_file, args.key, args.value)
        print(f"Unknown config subcommand: {subcommand}")
        return 1

    def _read(self, config_file: Path) -> Dict[str, Any]:
        if not config_file.exists():
            return json.loads(json.dumps(DEFAULT_CONFIG))
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{config_file}:{e.lineno}:{e.colno}: {e.msg}") from None

    def _show_config(self, config_file: Path) -> int:
        config = self._read(config_file)
        source = config_file if config_file.exists() else f"{config_file} (missing, built-in defaults)"
        print("App Configuration:")
        print(f"  Config file: {source}")
        for section, values in config.items():
            print(f"\n  {section}:")
            if isinstance(values, dict):
                for key, value in values.items():
                    print(f"    {key}: {json.dumps(value)}")
            else:
                print(f"    {json.dumps(values)}")
        return 0

    def _get_config(self, config_file: Path, key: str) -> int:
        value: Any = self._read(config_file)
        for part in key.split('.'):
            if isinstance(value, dict) and part in value:
                value = value[part]
            else:
                print(f"✗ Configuration key not found: {key}")
                return 1
        print(value if isinstance(value, str) else json.dumps(value))
        return 0

    def _set_config(self, config_file: Path, key: str, value: str) -> int:
        config = self._read(config_file)
        keys = key.split('.')
        current = config
        for part in keys[:-1]:
            if not isinstance(current.get(part), dict):
                current[part] = {}
            current = current[part]

        try:
            parsed_value = json.loads(value)
        except json.JSONDecodeError:
            parsed_value = value
        current[keys[-1]] = parsed_value

        config_file.parent.mkdir(parents=True, exist_ok=True)
        with open(config_file, 'w', encoding='utf-8') as f:
            json.dump(config, f, indent=2)
            f.write('\n')
        print(f"✓ Set {key} = {json.dumps(parsed_value)}")
        return 0
