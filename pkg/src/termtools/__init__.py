"""Terminology processing toolkit.

Acquisition of candidate terms from raw or tagged corpora, recognition of
term occurrences under surface variation, and bootstrapping of
lexico-syntactic patterns for semantic relations, with a persistent
human-validation loop served over HTTP.
"""

__version__ = "0.1.0"
