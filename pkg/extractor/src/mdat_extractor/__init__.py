"""mdat-extractor: turn audio corpora and transcripts into MDF1 feature files."""

__version__ = "0.1.0"
