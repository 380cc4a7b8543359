from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython: install with the pure-Python kernel backend only.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ffperm._kernels.core_c",
                ["src/ffperm/_kernels/core_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
