import os
import yaml

from .error import UnknownEquationError
from .inertia import ModelParams

EQUATIONS_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'equations.yml')


class Equations(object):
    """Registry of the named (alpha, beta, gamma) cells, loaded from equations.yml."""

    def __init__(self):
        self.entries = {}
        self.reference_scenario = {}

    def __iter__(self):
        for val in self.entries.values():
            yield val

    def __len__(self):
        return len(self.entries)

    def load_yaml(self, file):
        data = yaml.safe_load(file)
        for name, options in data.get('equations', {}).items():
            self.entries[name] = Equation(name, options)
        self.reference_scenario = data.get('reference_scenario', {})

    def get(self, name):
        if name not in self.entries:
            raise UnknownEquationError(name, key='equation')
        return self.entries[name]

    def get_from_params(self, params):
        for equation in self.entries.values():
            if equation.key == (params.alpha, params.beta, params.gamma):
                return equation
        raise UnknownEquationError()


class Equation(object):

    def __init__(self, name, options=None):
        options = options or {}
        self.name = name
        self.alpha = int(options.get('alpha', 0))
        self.beta = int(options.get('beta', 0))
        self.gamma = int(options.get('gamma', 0))
        self.description = options.get('description') or name

    @property
    def key(self):
        return (self.alpha, self.beta, self.gamma)

    def __repr__(self):
        return u'%s (alpha=%d, beta=%d, gamma=%d)' % (self.name, self.alpha, self.beta, self.gamma)

    def params(self, n=1, b=2.0):
        return ModelParams(self.alpha, self.beta, self.gamma, n=n, b=b)


def default_equations():
    with open(EQUATIONS_FILE, 'rb') as fp:
        equations = Equations()
        equations.load_yaml(fp)
    return equations
