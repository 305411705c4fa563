# Unit tests for exactrc.tilt
