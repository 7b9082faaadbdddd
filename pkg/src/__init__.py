"""Girth classification of real monomial graphs."""
