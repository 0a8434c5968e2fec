"""
函数与验证套件插件，由 configs/ 下的 py_plugin 字段引用
"""
