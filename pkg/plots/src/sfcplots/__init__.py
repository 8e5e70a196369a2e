"""Figures from benchmark result CSVs."""

from .figures import FigureSpec, NoDataError, SchemaError, plot_results

__all__ = ["FigureSpec", "NoDataError", "SchemaError", "plot_results"]
