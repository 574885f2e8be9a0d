from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "graphcodes._core",
    sorted(glob("src/*.cpp")) + ["python/bindings.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(
    packages=["graphcodes"],
    package_dir={"graphcodes": "python/graphcodes"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)
