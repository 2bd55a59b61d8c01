from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "tamemod._core._speedups",
                ["src/tamemod/_core/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython at build time: the package still works on the pure kernel.
    ext_modules = []

setup(ext_modules=ext_modules)
