# -*- coding: utf-8 -*-
from setuptools import setup

packages = [
    "holoris",
    "holoris.beampattern",
    "holoris.channel",
    "holoris.scenarios",
]

package_data = {"": ["*"]}

install_requires = [
    "click>=8.1,<9.0",
    "numpy>=1.24,<2.0",
    "pydantic>=2.4,<3.0",
    "scipy>=1.10,<2.0",
    "tenacity>=8.0.1,<9.0.0",
]

extras_require = {"plot": ["matplotlib>=3.7,<4.0"]}

entry_points = {"console_scripts": ["holoris = holoris.cli:cli"]}

setup_kwargs = {
    "name": "holoris",
    "version": "0.1.0",
    "description": "Holographic RIS beam patterns and closed-loop THz channel estimation",
    "long_description": "# holoris\nSimulation library and experiment runner for holographic reconfigurable\nintelligent surfaces (RIS) in THz massive MIMO systems.\n",
    "author": "The holoris Authors",
    "author_email": None,
    "maintainer": None,
    "maintainer_email": None,
    "url": None,
    "packages": packages,
    "package_data": package_data,
    "install_requires": install_requires,
    "extras_require": extras_require,
    "entry_points": entry_points,
    "python_requires": ">=3.9,<4.0",
}


setup(**setup_kwargs)
