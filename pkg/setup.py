from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "netplace._kernels._matching_c",
        ["src/netplace/_kernels/_matching_c.pyx"],
        extra_compile_args=["-O3"],
    ),
]

setup(ext_modules=cythonize(extensions, language_level=3))
