# Unit tests for exactrc.ui
