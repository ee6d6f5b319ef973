from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "confjac._core",
        ["src/confjac/_core.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
