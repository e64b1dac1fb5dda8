"""Compiler toolchain for PINDAH data-retention transfer programs."""

from .compiler import CompileResult, compile_source

__all__ = ["CompileResult", "compile_source"]
