# Signature family plugins
# Plugins are auto-discovered from this directory
