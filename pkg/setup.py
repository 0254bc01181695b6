import warnings
from pathlib import Path

from setuptools import setup

try:
    import pypandoc

    PYPANDOC_EXISTS = True
except ImportError:
    PYPANDOC_EXISTS = False

ROOT = Path(".")
README_PATH = ROOT / "README.md"

if PYPANDOC_EXISTS:
    with README_PATH.open(encoding="utf-8") as f:
        LONG_DESCRIPTION = pypandoc.convert_text(f.read(), "rst", format="md")
else:
    warnings.warn("PyPandoc is not found! Please install it before building wheels.")
    LONG_DESCRIPTION = ""

setup(
    name="equiquant",
    version="0.1.0",
    description="Exact Casimir spectra, critical shift values and equivariant quantization for the orthogonal and symplectic 3-graded Lie algebras.",
    long_description=LONG_DESCRIPTION,
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="""casimir lie-algebra quantization young-diagrams exact-arithmetic""",
    packages=["equiquant"],
    python_requires=">=3.8",
    install_requires=["wrapt", "sympy>=1.12"],
    entry_points={"console_scripts": ["equiquant=equiquant.cli:main"]},
)
