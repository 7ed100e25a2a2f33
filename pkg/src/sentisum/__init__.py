"""Sentiment-aware extractive summarization (ECPE-TextRank), a sentiment-weighted
sequence loss, and exact recall ROUGE."""

__version__ = "0.1.0"
