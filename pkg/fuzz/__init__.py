# fuzz/__init__.py
