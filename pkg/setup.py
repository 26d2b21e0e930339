"""
Script to automate the uawork package installation.
To use this file, navigate to the directory where setup.py is located and use the command:.
   ----------------
   $ pip install .
   ----------------
This will automatically install the package and the uawork command in your environment.
"""

from setuptools import setup, find_packages
import os

_version_ns = {}
with open(os.path.join(os.path.dirname(os.path.abspath(__file__)), "uawork", "_version.py")) as _f:
    exec(_f.read(), _version_ns)
__version__ = _version_ns["__version__"]

setup(
    name="uawork",
    version=__version__,
    python_requires='>=3.8, <4',
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        'numpy>=1.22.3',
        'bitstring>=3.1.9',
        'PyYAML>=3.12',
    ],
    extras_require={'test': ['pytest>=7.0']},
    package_data={'uawork': ['config/*.yaml', 'config/algebras/*.alg']},
    entry_points={'console_scripts': ['uawork=uawork.cli:main']},
    author="The uawork Authors",
    description="Finite universal-algebra workbench: congruence and subalgebra lattices, higher commutators, "
                "supernilpotence and retract certificates for algebras given by operation tables.",
    license='Apache-2.0',
    license_files='LICENSE.txt'
)
