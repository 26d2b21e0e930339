"""
License:
--------
Copyright 2026 The uawork Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.


File description:
-----------------
Exception hierarchy shared by every uawork module.

"""

__all__ = [
    "WorkbenchError",
    "ConfigError",
    "AlgebraFormatError",
    "SignatureError",
    "ElementRangeError",
    "ArityMismatchError",
    "NotACongruenceError",
    "NotASubuniverseError",
    "SizeGuardError",
    "PreconditionError",
    "IncompatibleAlgebraError",
    "NotSubdirectError",
    "UnknownAlgebraError",
    "SizeMismatchError",
    "BudgetExhaustedError",
    "InternalCheckError",
]


class WorkbenchError(ValueError):
    """
    Base class for every error raised on bad input to the workbench.
    """


class ConfigError(WorkbenchError):
    pass


class AlgebraFormatError(WorkbenchError):
    """
    Raised by the algebra file parser. Carries the 1-based line number of the offending line.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = "line {}: {}".format(lineno, message)
        super().__init__(message)


class SignatureError(WorkbenchError):
    pass


class ElementRangeError(WorkbenchError):
    pass


class ArityMismatchError(WorkbenchError):
    pass


class NotACongruenceError(WorkbenchError):
    pass


class NotASubuniverseError(WorkbenchError):
    pass


class SizeGuardError(WorkbenchError):
    pass


class PreconditionError(WorkbenchError):
    pass


class IncompatibleAlgebraError(WorkbenchError):
    pass


class NotSubdirectError(WorkbenchError):
    pass


class UnknownAlgebraError(WorkbenchError):
    pass


class SizeMismatchError(WorkbenchError):
    pass


class BudgetExhaustedError(WorkbenchError):
    """
    Raised when a result needs a closed subpower and the closure budget ran out first. The command line reports it as
    undecided rather than as an input error.
    """


class InternalCheckError(RuntimeError):
    """
    Raised when a computed result fails its own re-verification.
    """
