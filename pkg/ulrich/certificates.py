"""Certificate files: the command, its inputs and seed, the JSON result and named checks."""
import json
import logging
import os
from dataclasses import dataclass, field

from . import __version__
from .errors import SchemaError

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ''

    def to_json(self):
        return {'name': self.name, 'passed': bool(self.passed), 'detail': self.detail}


@dataclass
class CertificateFile:
    command: str
    inputs: dict
    seed: int
    result: dict
    checks: list = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def add(self, name, passed, detail=''):
        self.checks.append(Check(name, bool(passed), str(detail)))
        return self

    def to_json(self):
        return {'version': self.version, 'command': self.command, 'inputs': dict(self.inputs),
                'seed': self.seed, 'result': self.result,
                'checks': [check.to_json() for check in self.checks]}

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def write(self, path):
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w') as f:
            f.write(self.dumps() + '\n')
        LOGGER.info('wrote certificate %s', path)
        return path

    @classmethod
    def from_json(cls, data):
        try:
            checks = [Check(c['name'], bool(c['passed']), c.get('detail', '')) for c in data['checks']]
            return cls(data['command'], data['inputs'], data['seed'], data['result'], checks, data['version'])
        except (KeyError, TypeError) as err:
            raise SchemaError(f'malformed certificate: {err}') from err

    @classmethod
    def read(cls, path):
        return cls.from_json(read_json(path))

    def render_text(self):
        lines = [f'{self.command} (seed {self.seed}, version {self.version})']
        for check in self.checks:
            mark = 'ok' if check.passed else 'FAIL'
            lines.append(f'  [{mark}] {check.name}' + (f': {check.detail}' if check.detail else ''))
        lines.append('passed' if self.passed else 'failed')
        return '\n'.join(lines)


def is_certificate(data):
    return isinstance(data, dict) and {'command', 'checks', 'result'} <= set(data)


def read_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as err:
        raise SchemaError(f'{path} is not valid JSON: {err}') from err
    except OSError as err:
        raise SchemaError(f'cannot read {path}: {err}') from err
