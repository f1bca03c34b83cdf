"""Lung-ultrasound preprocessing toolkit.

Thin Python layer over the C++ core: pleural-line segmentation, anatomical
region masking, pleural straightening, temporal clip sampling, classification
metrics, and synthetic phantom generation.
"""

from lus._core import (
    LusError,
    __version__,
    accuracy,
    auc_multiclass,
    f1_macro,
    gaussian_blur,
    generate_phantom,
    make_variants,
    resize_bilinear,
    roc_binary,
    sample_frame_indices,
    segment_pleura,
    severity_of,
    sobel_y,
)

__all__ = [
    "LusError",
    "__version__",
    "accuracy",
    "auc_multiclass",
    "f1_macro",
    "gaussian_blur",
    "generate_phantom",
    "make_variants",
    "resize_bilinear",
    "roc_binary",
    "sample_frame_indices",
    "segment_pleura",
    "severity_of",
    "sobel_y",
]
