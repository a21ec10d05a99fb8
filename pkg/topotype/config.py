# Copyright (c) 2025 topotype developers

# This library is free software: you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation version 3.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public
# License along with this library.  If not, see <http://www.gnu.org/licenses/>.

import os
import ast
import pathlib
import logging
from typing import Mapping, Optional

from topotype.consts import (
    ENV_GUARD_STEPS,
    DEFAULT_MAX_MULTISETS,
    DEFAULT_MAX_STEPS,
)

_logger = logging.getLogger(__name__)


class GuardSpec:
    """Feasibility limits for the brute-force oracle.

    Wraps a plain dict such as::

        {"max_multisets": 10 ** 6, "max_steps": 10 ** 9}

    Missing keys fall back to the defaults in :mod:`topotype.consts`.
    """

    MAX_MULTISETS = "max_multisets"
    MAX_STEPS = "max_steps"

    DEFAULTS = {
        MAX_MULTISETS: DEFAULT_MAX_MULTISETS,
        MAX_STEPS: DEFAULT_MAX_STEPS,
    }

    def __init__(self, data: Optional[dict] = None) -> None:

        data = dict(data or {})
        unknown = set(data) - set(self.DEFAULTS)
        if unknown:
            raise ValueError(f"unknown guard keys: {', '.join(sorted(unknown))}")

        for key, value in data.items():
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ValueError(f"guard '{key}' must be a positive integer, got {value!r}")

        self._data = data

    def get(self, key: str) -> int:
        return self._data.get(key, self.DEFAULTS[key])

    @property
    def max_multisets(self) -> int:
        return self.get(self.MAX_MULTISETS)

    @property
    def max_steps(self) -> int:
        return self.get(self.MAX_STEPS)

    def updated(self, **overrides) -> "GuardSpec":
        """Return a copy with the non-None overrides applied."""
        data = dict(self._data)
        data.update({k: v for k, v in overrides.items() if v is not None})
        return GuardSpec(data)

    def as_dict(self) -> dict:
        return {key: self.get(key) for key in self.DEFAULTS}

    @classmethod
    def from_file(cls, path) -> "GuardSpec":
        try:
            data = ast.literal_eval(pathlib.Path(path).read_text())
        except FileNotFoundError as e:
            raise FileNotFoundError(f"{e}. Omit '--limits' to use the default guard.") from e
        if not isinstance(data, dict):
            raise ValueError(f"limits file '{path}' must contain a dict literal")
        return cls(data)

    @classmethod
    def from_env(cls, base: Optional["GuardSpec"] = None,
                 environ: Optional[Mapping[str, str]] = None) -> "GuardSpec":
        base = base or cls()
        environ = os.environ if environ is None else environ
        value = environ.get(ENV_GUARD_STEPS)
        if not value:
            return base
        try:
            steps = int(value)
        except ValueError:
            raise ValueError(f"{ENV_GUARD_STEPS} must be an integer, got {value!r}")
        _logger.info(f"max_steps overridden by {ENV_GUARD_STEPS}={steps}")
        return base.updated(max_steps=steps)
