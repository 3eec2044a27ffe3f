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

"""Simple configuration module that allows environment overrides"""

import os

KV = dict()
_env_prefix = 'LOEWNER_LAB_'

# Relative PSD tolerance used by Loewner comparisons when none is given

if os.environ.get(_env_prefix + 'DEFAULT_TOL') is not None:
    KV['DEFAULT_TOL'] = float(os.environ.get(_env_prefix + 'DEFAULT_TOL'))
else:
    KV['DEFAULT_TOL'] = 1e-9

# Jacobi convergence: off-diagonal Frobenius norm relative to ||A||_F

if os.environ.get(_env_prefix + 'JACOBI_TOL') is not None:
    KV['JACOBI_TOL'] = float(os.environ.get(_env_prefix + 'JACOBI_TOL'))
else:
    KV['JACOBI_TOL'] = 1e-13

# Jacobi sweep budget before NonConvergence is raised

if os.environ.get(_env_prefix + 'JACOBI_SWEEPS') is not None:
    KV['JACOBI_SWEEPS'] = int(os.environ.get(_env_prefix + 'JACOBI_SWEEPS'))
else:
    KV['JACOBI_SWEEPS'] = 64

# Largest accepted asymmetry ||A - A*||_F relative to ||A||_F

if os.environ.get(_env_prefix + 'SYMMETRIZE_TOL') is not None:
    KV['SYMMETRIZE_TOL'] = float(os.environ.get(_env_prefix + 'SYMMETRIZE_TOL'))
else:
    KV['SYMMETRIZE_TOL'] = 1e-12

# Eigenvalues this close (relative) to a domain endpoint are clamped onto it

if os.environ.get(_env_prefix + 'CLAMP_TOL') is not None:
    KV['CLAMP_TOL'] = float(os.environ.get(_env_prefix + 'CLAMP_TOL'))
else:
    KV['CLAMP_TOL'] = 1e-12

# Threshold for flagging a chain link as an equality

if os.environ.get(_env_prefix + 'EQUALITY_TOL') is not None:
    KV['EQUALITY_TOL'] = float(os.environ.get(_env_prefix + 'EQUALITY_TOL'))
else:
    KV['EQUALITY_TOL'] = 1e-10

# Tolerance for unitality, linearity and positivity checks of maps

if os.environ.get(_env_prefix + 'UNITAL_TOL') is not None:
    KV['UNITAL_TOL'] = float(os.environ.get(_env_prefix + 'UNITAL_TOL'))
else:
    KV['UNITAL_TOL'] = 1e-12

# Central finite difference step factor for the superquadratic c_s candidate

if os.environ.get(_env_prefix + 'FD_STEP') is not None:
    KV['FD_STEP'] = float(os.environ.get(_env_prefix + 'FD_STEP'))
else:
    KV['FD_STEP'] = 1e-6

# How many times the instance forge resamples before giving up

if os.environ.get(_env_prefix + 'MAX_RETRIES') is not None:
    KV['MAX_RETRIES'] = int(os.environ.get(_env_prefix + 'MAX_RETRIES'))
else:
    KV['MAX_RETRIES'] = 1000

# Scale of the random PSD slack pushed into A and D, as a fraction of M - m

if os.environ.get(_env_prefix + 'Q_SCALE_FRACTION') is not None:
    KV['Q_SCALE_FRACTION'] = float(os.environ.get(_env_prefix + 'Q_SCALE_FRACTION'))
else:
    KV['Q_SCALE_FRACTION'] = 0.25

# Default number of campaign worker processes

if os.environ.get(_env_prefix + 'WORKERS') is not None:
    KV['WORKERS'] = int(os.environ.get(_env_prefix + 'WORKERS'))
else:
    KV['WORKERS'] = 1
