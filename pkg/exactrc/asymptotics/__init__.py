"""Asymptotics module for exactrc."""

from .asymptotics import Branch, Prediction, TieRule, na_prime_mod, predict, select_branch

__all__ = ["Branch", "Prediction", "TieRule", "na_prime_mod", "predict", "select_branch"]
