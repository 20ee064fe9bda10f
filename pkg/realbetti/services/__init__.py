"""Service layer - glue between the CLI and the engine"""
