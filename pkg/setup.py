"""Optional compiled kernel; the package works without it (pure-Python fallback)."""
import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: compiled kernel not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not built ({exc}); using pure Python")


ext_modules = []
if os.environ.get("PVK_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/pvk/_elim.pyx"], compiler_directives={"language_level": "3"}, quiet=True
        )
    except Exception as exc:  # Cython missing
        print(f"warning: building without the compiled kernel ({exc})")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
