"""mdat: multimodal dual-attention emotion classifier, baseline, and experiment harness."""

__version__ = "0.1.0"
