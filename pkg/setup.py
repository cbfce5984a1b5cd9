from setuptools import find_packages, setup

version = "0.3.0"
CUDA = False


def create_version_py(version, CUDA):
    file = open("iclstorch/version.py", "w")
    if CUDA:
        version_string = "__version__ = '{}'".format(version)
    else:
        version_string = "__version__ = '{}-cpu'".format(version)

    file.write(version_string)
    file.close()


create_version_py(version, CUDA)
if CUDA:
    name = "iclstorch"
else:
    name = "iclstorch-cpu"

if __name__ == "__main__":
    setup(
        name=name,
        version=version,
        description="Implicitly Constrained Least Squares Semi-supervised Classification",
        long_description="A library and command-line benchmark runner for implicitly constrained least squares (ICLS) semi-supervised classification, its self-learning, updated-second-moment and oracle baselines, and a 1-D never-worse certification harness, built on PyTorch",
        url="https://github.com/iclstorch/iclstorch",
        license="GPL-3.0",
        packages=find_packages(exclude=["tests", "tests.*"]),
        install_requires=[
            "numpy",
            "pandas",
            "scipy>=1.7.0",
            "scikit-learn",
            "torch>=1.11.0",
        ],
        extras_require={"test": ["pytest"], "docs": ["sphinx", "sphinx_rtd_theme"]},
        entry_points={"console_scripts": ["iclstorch=iclstorch.cli:main"]},
        include_package_data=True,
        python_requires=">=3.7",
    )
