#  Copyright 2026 The holoris Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "HolorisError",
    "DomainError",
    "DegenerateBandError",
    "ConfigurationError",
    "StructuralError",
    "NumericError",
    "RankDeficientError",
    "SingularSupportError",
    "ResampleExhaustedError",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


class HolorisError(Exception):
    """base class for every error raised by the holoris package"""


class DomainError(HolorisError, ValueError):
    """an input value lies outside the domain of the operation"""


class DegenerateBandError(DomainError):
    """spatial bandpass cut-offs enclose a zero-width band"""


class ConfigurationError(HolorisError, ValueError):
    """
    Raised when an experiment or system configuration cannot be used, for
    example unknown keys in a config file or group counts that do not yield
    an integral number of uplink search directions.
    """


class StructuralError(HolorisError, ValueError):
    """array shapes do not agree"""


class NumericError(HolorisError, ArithmeticError):
    """a numerical procedure could not produce a trustworthy result"""


class RankDeficientError(NumericError):
    """least-squares system does not have full column rank"""


class SingularSupportError(NumericError):
    """
    The columns selected by the sparse solver are numerically dependent.

    Attributes
    ----------
    condition: float
        The 2-norm condition number of the selected column matrix.
    """

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition


class ResampleExhaustedError(NumericError):
    """a bounded resampling loop ran out of attempts"""
