from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: ship the interpreted kernels only
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "mvtopo._kernels._ckernels",
                ["src/mvtopo/_kernels/_ckernels.pyx"],
                extra_compile_args=["-O3"],
                language="c++",
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
