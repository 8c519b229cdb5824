"""Setup file for bwcousins package."""
from pathlib import Path

from setuptools import setup, find_packages

PROJECT_DIR = Path(__file__).parent.resolve()
VERSION = (PROJECT_DIR / "bwcousins" / "VERSION").read_text().strip()

README_FILE = PROJECT_DIR / "README.md"
LONG_DESCRIPTION = README_FILE.read_text(encoding="utf-8")

REQUIRES = [
    "click>=8.0",
    "sympy>=1.12",
    "voluptuous>=0.12.2",
]


setup(
    name="pybwcousins",
    version=VERSION,
    description="Barnes-Wall lattices, Reed-Muller codes and their midwest cousins",
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    license="MIT License",
    install_requires=REQUIRES,
    packages=find_packages(exclude=["tests", "tests.*"]),
    include_package_data=True,
    package_data={"bwcousins": ["VERSION"]},
    python_requires=">=3.8",
    entry_points={"console_scripts": ["bwc = bwcousins.cli:cli"]},
    keywords=["lattice", "Barnes-Wall", "Reed-Muller", "coding theory"],
    zip_safe=True,
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
