# Test package for persistence module
