from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; kernels fall back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("covergraph._ckernels", ["src/covergraph/_ckernels.pyx"], optional=True, extra_compile_args=["-O3"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
