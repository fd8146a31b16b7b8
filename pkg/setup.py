from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "krall_dual_hahn._kernels_c",
        ["src/krall_dual_hahn/_kernels_c.pyx"],
        extra_compile_args=["-O2"],
    ),
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
