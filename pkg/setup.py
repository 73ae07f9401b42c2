from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()

with open("openhuim/_version.py") as f:
    version = f.readlines()[-1].split()[-1].strip("\"'")

requirements = [
    "numpy>=1.22.3",
    "networkx>=2.8",
    "scipy>=1.8"
]

requirements_docs = [
    "sphinx==4.5.0",
    "sphinx-autodoc-typehints==1.18.1",
    "sphinx-rtd-theme==1.0.0"
]

requirements_test = [
    "pytest==7.1.0",
    "pytest-cov==3.0.0",
    "hypothesis>=6.46"
]

setup(
    name="openhuim",
    version=version,
    author="Entropica Labs",
    packages=find_packages(where=".", exclude=["tests", "tests.*"]),
    install_requires=requirements,
    license="Apache 2.0",
    description="openhuim is a python library to mine correlated high-utility itemsets from quantitative transaction databases",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Operating System :: OS Independent",
    ],
    keywords="data mining high-utility itemsets correlation",
    entry_points={
        "console_scripts": ["openhuim=openhuim.io.cli:main"],
    },
    extras_require={
        "docs": requirements_docs,
        "tests": requirements_test,
        "all": requirements_docs + requirements_test
    },

)
