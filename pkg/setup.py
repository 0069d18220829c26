#!/usr/bin/env python3

# Copyright 2026 The QRAN Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

# http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Setup script for Q.R.AN.
"""

import os
from setuptools import setup, find_packages
from qran import __version__ as qranv

here = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(here, 'README.rst')) as f:
	long_description = f.read()

setup(
	name="Quantum-Robustness-ANalyzer",
	version=qranv,
	description='Robustness analysis of open-loop control strategies for two-level quantum systems.',
	long_description=long_description,
	classifiers=[
		'Development Status :: 4 - Beta',
		'Intended Audience :: Science/Research',
		'Intended Audience :: Developers',
		'Topic :: Scientific/Engineering :: Physics',
		'Topic :: Scientific/Engineering :: Information Analysis',
		'Topic :: Utilities',
		'License :: OSI Approved :: Apache Software License',
		'Environment :: Console',
		'Operating System :: POSIX :: Linux',
		'Programming Language :: Python :: Implementation :: CPython',
		'Programming Language :: Python :: 3 :: Only',
		'Programming Language :: Python :: 3.8',
		'Programming Language :: Python :: 3.9',
		'Programming Language :: Python :: 3.10',
		'Programming Language :: Python :: 3.11',
		'Programming Language :: Python :: 3.12'
	],
	keywords='quantum control robustness landau-zener allen-eberly rabi two-level',
	packages=find_packages(exclude=['contrib', 'docs', 'tests']),
	install_requires=['setuptools', 'numpy', 'scipy', 'psutil'],
	extras_require={
		'test': ['pytest', 'hypothesis', 'pylint'],
	},
	entry_points={
		'console_scripts': [
			'qran=qran:main',
		],
	},
	python_requires='>=3.8'
)
