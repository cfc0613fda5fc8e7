"""
Problem Files

Canonical JSON for problems: sorted keys, two-space indent, declaration order
kept in arrays, trailing newline. Saving a loaded canonical file reproduces
its bytes exactly.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..core import NEQ, Constraint, Problem, validate_problem
from ..errors import ProblemError, ProblemFormatError

logger = logging.getLogger(__name__)

_TOP_FIELDS = {'variables', 'constraints'}
_VARIABLE_FIELDS = {'name', 'domain'}
_CONSTRAINT_FIELDS = {'scope', 'allowed', 'kind'}


def problem_to_dict(problem: Problem) -> Dict[str, Any]:
    constraints: List[Dict[str, Any]] = []
    for constraint in problem.constraints:
        entry: Dict[str, Any] = {'scope': list(constraint.scope)}
        if constraint.is_shorthand:
            entry['kind'] = constraint.kind
        else:
            entry['allowed'] = [list(t) for t in constraint.allowed]
        constraints.append(entry)
    return {
        'variables': [{'name': name, 'domain': list(problem.domains[name])} for name in problem.variables],
        'constraints': constraints,
    }


def dumps_problem(problem: Problem) -> str:
    return json.dumps(problem_to_dict(problem), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def _reject_unknown(found: Dict[str, Any], allowed: set, where: str, path: Optional[str]) -> None:
    unknown = sorted(set(found) - allowed)
    if unknown:
        raise ProblemFormatError(f"unknown field '{unknown[0]}' in {where}", path)


def _strings(value: Any, where: str, path: Optional[str]) -> List[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ProblemFormatError(f"{where} must be an array of strings", path)
    return value


def problem_from_dict(data: Any, path: Optional[str] = None) -> Problem:
    if not isinstance(data, dict):
        raise ProblemFormatError("top level must be an object", path)
    _reject_unknown(data, _TOP_FIELDS, 'problem', path)
    if 'variables' not in data:
        raise ProblemFormatError("missing field 'variables'", path)

    if not isinstance(data['variables'], list):
        raise ProblemFormatError("variables must be an array", path)
    domains = []
    for index, entry in enumerate(data['variables']):
        where = f"variables[{index}]"
        if not isinstance(entry, dict):
            raise ProblemFormatError(f"{where} must be an object", path)
        _reject_unknown(entry, _VARIABLE_FIELDS, where, path)
        if not isinstance(entry.get('name'), str):
            raise ProblemFormatError(f"{where}.name must be a string", path)
        domains.append((entry['name'], _strings(entry.get('domain'), f"{where}.domain", path)))

    constraints = []
    raw_constraints = data.get('constraints', [])
    if not isinstance(raw_constraints, list):
        raise ProblemFormatError("constraints must be an array", path)
    for index, entry in enumerate(raw_constraints):
        where = f"constraints[{index}]"
        if not isinstance(entry, dict):
            raise ProblemFormatError(f"{where} must be an object", path)
        _reject_unknown(entry, _CONSTRAINT_FIELDS, where, path)
        scope = _strings(entry.get('scope'), f"{where}.scope", path)
        if 'kind' in entry:
            if 'allowed' in entry:
                raise ProblemFormatError(f"{where} has both 'kind' and 'allowed'", path)
            if entry['kind'] != NEQ:
                raise ProblemFormatError(f"{where}.kind must be '{NEQ}'", path)
            constraints.append(Constraint(scope=tuple(scope), kind=NEQ))
        else:
            allowed = entry.get('allowed')
            if not isinstance(allowed, list):
                raise ProblemFormatError(f"{where} needs 'allowed' or 'kind'", path)
            rows = [_strings(t, f"{where}.allowed[{k}]", path) for k, t in enumerate(allowed)]
            constraints.append(Constraint.extensional(scope, rows))

    return Problem.build(domains, constraints)


def loads_problem(text: str, path: Optional[str] = None, validate: bool = True) -> Problem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFormatError(e.msg, path, e.lineno, e.colno) from None
    problem = problem_from_dict(data, path)
    if validate:
        violations = validate_problem(problem)
        if violations:
            raise ProblemError(f"{path or 'problem'}: " + '; '.join(violations))
    return problem


def load_problem(path: Union[str, Path], validate: bool = True) -> Problem:
    path = Path(path)
    logger.debug("loading problem from %s", path)
    return loads_problem(path.read_text(encoding='utf-8'), str(path), validate)


def save_problem(problem: Problem, path: Union[str, Path]) -> Path:
    path = Path(path)
    if path.parent != Path('.'):
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_problem(problem), encoding='utf-8')
    return path
