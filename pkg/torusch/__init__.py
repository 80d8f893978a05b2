__version__ = '0.1.0'  # Use bumpversion to update
