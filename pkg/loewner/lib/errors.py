#
#  MIT License
#
#  (C) Copyright 2026 Hewlett Packard Enterprise Development LP
#
#  Permission is hereby granted, free of charge, to any person obtaining a
#  copy of this software and associated documentation files (the "Software"),
#  to deal in the Software without restriction, including without limitation
#  the rights to use, copy, modify, merge, publish, distribute, sublicense,
#  and/or sell copies of the Software, and to permit persons to whom the
#  Software is furnished to do so, subject to the following conditions:
#
#  The above copyright notice and this permission notice shall be included
#  in all copies or substantial portions of the Software.
#
#  THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
#  IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
#  FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
#  THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR
#  OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE,
#  ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
#  OTHER DEALINGS IN THE SOFTWARE.
#

"""Exceptions raised by the library"""


class LoewnerLabError(Exception):
    pass


class NonConvergence(LoewnerLabError, RuntimeError):
    pass


class DomainViolation(LoewnerLabError, ValueError):

    """A scalar function was evaluated outside its declared domain"""

    def __init__(self, message: str, value: float = None):
        super().__init__(message)
        self.value = value


class DimensionMismatch(LoewnerLabError, ValueError):
    pass


class DivisionByZero(LoewnerLabError, ZeroDivisionError):
    pass


class DegenerateInterval(LoewnerLabError, ValueError):
    pass


class NotHermitian(LoewnerLabError, ValueError):
    pass


class UnknownKind(LoewnerLabError, ValueError):
    pass


class UnknownFunction(LoewnerLabError, ValueError):
    pass


class ExhaustedRetries(LoewnerLabError, RuntimeError):
    pass


class HypothesisViolation(LoewnerLabError, ValueError):

    """An instance does not satisfy a named hypothesis of a theorem"""

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"{condition}: {detail}" if detail else condition)
        self.condition = condition


class ShapeMismatch(LoewnerLabError, ValueError):
    pass


class UnknownRelaxation(LoewnerLabError, ValueError):
    pass


class UnknownTheorem(LoewnerLabError, ValueError):
    pass


class ConfigError(LoewnerLabError, ValueError):

    """Campaign configuration is invalid; path names the offending field"""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class InstanceFormatError(LoewnerLabError, ValueError):
    pass
