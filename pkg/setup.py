import os

from setuptools import find_packages, setup

setup(
    name="covosc",
    version="0.1.0",
    packages=find_packages(include=["covosc", "covosc.*"]),
    include_package_data=True,
    install_requires=[
        "click",
        "numpy>=1.22",
        "scipy>=1.8",
    ],
    extras_require={
        "dev": [
            "ruff",
            "pytest",
            "hypothesis",
        ],
    },
    entry_points={
        "console_scripts": [
            "covosc=covosc.cli:main",
        ],
    },
    author="Mauc",
    description="Lorentz-covariant harmonic oscillator toolkit with quadrature oracles",
    long_description=open("README.md").read() if os.path.exists("README.md") else "",
    long_description_content_type="text/markdown",
)
