from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Cython missing: install the pure-Python package; the import-time
    # backend selection in seqscreen._backend falls back automatically.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("seqscreen._kernels", ["src/seqscreen/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
