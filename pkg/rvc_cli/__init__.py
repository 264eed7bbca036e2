"""Command-line surface: file formats, the ``rvc`` entry point and the reproduction harness."""
